"""Exhaustive enumeration of maximal d-wise intersecting families at tiny
parameters, deduplicated up to isomorphism.

The search is the candidate/excluded scheme familiar from maximal clique
enumeration, generalised to the d-wise property:

* ``R`` is the current family, ``P`` the sets addable to ``R`` still open for
  branching, ``X`` the addable sets whose branches are already done.
* A leaf with ``P`` and ``X`` both empty is a maximal family; each maximal
  family is reported exactly once.
* Pivoting: a maximal ``M`` containing ``R`` but not the pivot ``u`` must
  contain some ``v`` in ``P`` with ``u & v & c`` empty for some intersection
  ``c`` of at most d-2 sets of ``R`` and ``P``, so only such ``v`` (and ``u``)
  need branches.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field

from .iso import canonical_form
from .setcore import (
    IntersectionClosure,
    ParameterError,
    Params,
    SetFamily,
    binomial,
    k_subsets,
    minimal_elements,
)
from .verify import is_trivial

DEFAULT_NODE_CAP = 100_000_000
RECOMMENDED_POOL = 1000


@dataclass
class IsoClass:
    representative: SetFamily
    size: int
    multiplicity: int

    def to_json(self) -> dict:
        return {"size": self.size, "multiplicity": self.multiplicity, "sets": self.representative.as_lists()}


@dataclass
class EnumerationResult:
    params: Params
    classes: list[IsoClass]
    exhausted: bool
    nodes: int = 0
    seconds: float = 0.0
    leaves: int = 0
    note: str = ""
    mode: dict = field(default_factory=dict)

    @property
    def lower_bound_only(self) -> bool:
        return not self.exhausted

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "k": self.params.k,
            "d": self.params.d,
            **self.mode,
            "exhausted": self.exhausted,
            "note": self.note,
            "stats": {"nodes": self.nodes, "leaves": self.leaves, "seconds": round(self.seconds, 3)},
            "classes": [c.to_json() for c in self.classes],
        }


class _NodeCap(Exception):
    pass


class _Enumerator:
    def __init__(self, p: Params, min_size: int, node_cap: int, t: int | None, top_m: int | None, nontrivial: bool) -> None:
        self.p = p
        self.min_size = min_size
        self.node_cap = node_cap
        self.t = t
        self.top_m = top_m
        self.nontrivial = nontrivial
        self.nodes = 0
        self.leaves = 0
        self.found: dict[tuple[int, ...], list] = {}
        self.sizes: list[int] = []

    # -- compatibility -------------------------------------------------
    def _pair_ok(self, a: int, b: int, gate: list[int]) -> bool:
        if self.t is not None:
            return (a & b).bit_count() >= self.t
        x = a & b
        return all(x & c for c in gate)

    def _conflict_gate(self, R: list[int], P: list[int]) -> list[int]:
        if self.t is not None:
            return []
        depth = self.p.d - 2
        if depth == 0:
            return [(1 << self.p.n) - 1]
        base = set(R) | set(P)
        level = set(base)
        for _ in range(depth - 1):
            level |= {a & b for a in level for b in base}
        return minimal_elements(level)

    # -- search --------------------------------------------------------
    def _threshold(self) -> int:
        if self.top_m is None or len(self.sizes) < self.top_m:
            return self.min_size
        return max(self.min_size, sorted(set(self.sizes), reverse=True)[: self.top_m][-1])

    def run(self) -> None:
        n, k, d = self.p.n, self.p.k, self.p.d
        pool = list(k_subsets(n, k))
        cl = IntersectionClosure(n, max(d - 1, 0)) if self.t is None else None
        self._search([], cl, pool, [])

    def _search(self, R: list[int], cl: IntersectionClosure | None, P: list[int], X: list[int]) -> None:
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise _NodeCap
        if not P:
            if not X:
                self._leaf(R)
            return
        if len(R) + len(P) < self._threshold():
            return
        gate = self._conflict_gate(R, P)
        best_u, best_branch = None, None
        for u in P + X:
            branch = [v for v in P if v == u or not self._pair_ok(u, v, gate)]
            if best_branch is None or len(branch) < len(best_branch):
                best_u, best_branch = u, branch
                if len(branch) <= 1:
                    break
        P = list(P)
        X = list(X)
        for v in best_branch:
            if self.t is None:
                inner = cl.antichain(self.p.d - 2) if self.p.d >= 2 else []
                P2 = [q for q in P if q != v and all(q & v & c for c in inner)]
                X2 = [q for q in X if all(q & v & c for c in inner)]
                cl2 = cl.copy()
                cl2.add(v)
            else:
                P2 = [q for q in P if q != v and (q & v).bit_count() >= self.t]
                X2 = [q for q in X if (q & v).bit_count() >= self.t]
                cl2 = None
            self._search(R + [v], cl2, P2, X2)
            P.remove(v)
            X.append(v)
            if len(R) + len(P) < self._threshold():
                break

    def _leaf(self, R: list[int]) -> None:
        self.leaves += 1
        fam = SetFamily.from_masks(self.p.n, self.p.k, R)
        if self.nontrivial and is_trivial(fam) is not None:
            return
        if len(fam) < self.min_size:
            return
        canon = canonical_form(fam).canonical
        entry = self.found.get(canon.members)
        if entry is None:
            self.found[canon.members] = [canon, 1]
            self.sizes.append(len(fam))
        else:
            entry[1] += 1


def enumerate_maximal(
    p: Params,
    min_size: int = 0,
    node_cap: int = DEFAULT_NODE_CAP,
    t: int | None = None,
    nontrivial: bool = True,
    _top_m: int | None = None,
) -> EnumerationResult:
    """All maximal (non-trivial) d-wise intersecting k-families on [n], up to
    isomorphism.

    With ``t`` given the property is pairwise t-intersection instead, and
    ``p.d`` is ignored.  Classes are sorted by size (descending), then by
    canonical form.  If ``node_cap`` is reached the result carries
    ``exhausted=False`` and whatever was found so far.
    """
    if t is not None and t < 1:
        raise ParameterError("t must be >= 1")
    e = _Enumerator(p, min_size, node_cap, t, _top_m, nontrivial)
    start = time.perf_counter()
    exhausted = True
    try:
        e.run()
    except _NodeCap:
        exhausted = False
    elapsed = time.perf_counter() - start
    classes = [IsoClass(rep, len(rep), mult) for rep, mult in e.found.values()]
    classes.sort(key=lambda c: (-c.size, c.representative.members))
    notes = []
    if not exhausted:
        notes.append(f"node cap {node_cap} reached: lower bound only")
    if binomial(p.n, p.k) > RECOMMENDED_POOL:
        notes.append(f"C(n,k) = {binomial(p.n, p.k)} exceeds the recommended {RECOMMENDED_POOL}")
    mode = {"min_size": min_size, "nontrivial": nontrivial}
    if t is not None:
        mode["t"] = t
    return EnumerationResult(p, classes, exhausted, e.nodes, elapsed, e.leaves, "; ".join(notes), mode)


def top_m_maximal(p: Params, m: int, node_cap: int = DEFAULT_NODE_CAP, t: int | None = None) -> EnumerationResult:
    """The m largest isomorphism classes, ties ordered by canonical form.

    Branches that cannot reach the current m-th largest class size are cut,
    so multiplicities of the returned classes are still complete.
    """
    if m < 0:
        raise ParameterError("m must be >= 0")
    if m == 0:
        return EnumerationResult(p, [], True, note="m = 0")
    res = enumerate_maximal(p, 0, node_cap, t=t, _top_m=m)
    keep = sorted({c.size for c in res.classes}, reverse=True)[:m]
    res.classes = [c for c in res.classes if c.size >= (keep[-1] if keep else 0)][:m]
    return res


def brute_force_classes(p: Params, nontrivial: bool = True, limit: int = 20) -> set[tuple[int, ...]]:
    """Canonical forms of maximal families found by filtering every subfamily.

    Reference oracle for ``C(n,k) <= limit``.
    """
    from .verify import naive_addable, naive_dwise

    pool = list(k_subsets(p.n, p.k))
    if len(pool) > limit:
        raise ParameterError(f"C(n,k) = {len(pool)} exceeds the brute-force limit {limit}")
    out = set()
    for bits in range(1, 1 << len(pool)):
        members = [pool[i] for i in range(len(pool)) if bits >> i & 1]
        if not naive_dwise(members, p.n, p.d):
            continue
        outside = [A for A in pool if A not in members]
        if any(naive_addable(A, members, p.n, p.d) for A in outside):
            continue
        fam = SetFamily.from_masks(p.n, p.k, members)
        if nontrivial and is_trivial(fam) is not None:
            continue
        out.add(canonical_form(fam).canonical.members)
    return out


def labeled_counts(result: EnumerationResult) -> dict[int, int]:
    """Number of labeled maximal families per size."""
    out: dict[int, int] = defaultdict(int)
    for c in result.classes:
        out[c.size] += c.multiplicity
    return dict(out)
