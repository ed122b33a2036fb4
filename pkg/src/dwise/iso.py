"""Isomorphism of set families under relabeling of the ground set.

Canonical labeling follows the individualize-and-refine scheme: element
colours are refined against member colours until stable, the first
non-singleton cell is split by individualizing each of its elements in turn,
and every discrete leaf yields a relabeling.  The canonical family is the
least leaf image.  The search tree of ``pi(F)`` is the image of the tree of
``F`` under ``pi``, so the minimum is a class invariant.  Automorphisms found
along the way prune children lying in one orbit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .setcore import (
    ParameterError,
    Permutation,
    ResourceCapError,
    SetFamily,
    elements_of,
)

DEFAULT_ISO_CAP = 16
DEFAULT_LEAF_CAP = 200_000


@dataclass(frozen=True)
class CanonicalForm:
    canonical: SetFamily
    relabeling: Permutation


def _rank(sigs: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def degree_multiset(family: SetFamily) -> list[int]:
    deg = [0] * family.n
    for m in family.members:
        for e in elements_of(m):
            deg[e - 1] += 1
    return sorted(deg)


def _codegrees(family: SetFamily) -> list[list[int]]:
    n = family.n
    co = [[0] * n for _ in range(n)]
    for m in family.members:
        els = [e - 1 for e in elements_of(m)]
        for a in els:
            row = co[a]
            for b in els:
                row[b] += 1
    return co


def codegree_multiset(family: SetFamily) -> list[int]:
    co = _codegrees(family)
    n = family.n
    return sorted(co[a][b] for a in range(n) for b in range(a + 1, n))


class _Search:
    def __init__(self, family: SetFamily, leaf_cap: int) -> None:
        self.n = family.n
        self.members = list(family.members)
        self.elems = [[e - 1 for e in elements_of(m)] for m in self.members]
        self.inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, els in enumerate(self.elems):
            for e in els:
                self.inc[e].append(i)
        self.leaf_cap = leaf_cap
        self.leaves = 0
        self.autos: list[list[int]] = []
        self.first: tuple[tuple[int, ...], list[int]] | None = None
        self.best: tuple[tuple[int, ...], list[int]] | None = None

    def initial(self, family: SetFamily) -> list[int]:
        co = _codegrees(family)
        # high-degree elements first, so stars get their centre labelled 1
        sigs = [(-co[v][v], tuple(sorted(-co[v][u] for u in range(self.n) if u != v))) for v in range(self.n)]
        return self.refine(_rank(sigs))

    def refine(self, colors: list[int]) -> list[int]:
        ncol = max(colors, default=-1) + 1
        while ncol < self.n:
            mcol = _rank([tuple(sorted(colors[e] for e in els)) for els in self.elems])
            sigs = [(colors[v], tuple(sorted(mcol[i] for i in self.inc[v]))) for v in range(self.n)]
            new = _rank(sigs)
            c = max(new, default=-1) + 1
            if c == ncol:
                break
            colors, ncol = new, c
        return colors

    def _orbit_has(self, v: int, seen: list[int], prefix: list[int]) -> bool:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.autos:
            if any(g[p] != p for p in prefix):
                continue
            for x in range(self.n):
                a, b = find(x), find(g[x])
                if a != b:
                    parent[a] = b
        root = find(v)
        return any(find(u) == root for u in seen)

    def _leaf(self, colors: list[int]) -> None:
        self.leaves += 1
        if self.leaves > self.leaf_cap:
            raise ResourceCapError(f"canonical labeling exceeded {self.leaf_cap} leaves")
        img = []
        for els in self.elems:
            x = 0
            for e in els:
                x |= 1 << colors[e]
            img.append(x)
        image = tuple(sorted(img))
        for ref in (self.first, self.best):
            if ref is not None and ref[0] == image:
                inv = [0] * self.n
                for v, c in enumerate(ref[1]):
                    inv[c] = v
                g = [inv[colors[v]] for v in range(self.n)]
                if any(g[v] != v for v in range(self.n)):
                    self.autos.append(g)
                break
        if self.first is None:
            self.first = (image, colors)
        if self.best is None or image < self.best[0]:
            self.best = (image, colors)

    def search(self, colors: list[int], prefix: list[int]) -> None:
        counts = Counter(colors)
        cell = next((c for c in range(self.n) if counts[c] > 1), None)
        if cell is None:
            self._leaf(colors)
            return
        seen: list[int] = []
        for v in (u for u in range(self.n) if colors[u] == cell):
            if seen and self._orbit_has(v, seen, prefix):
                continue
            seen.append(v)
            split = _rank([(colors[u], 0 if u == v else 1) for u in range(self.n)])
            self.search(self.refine(split), prefix + [v])


def canonical_form(family: SetFamily, cap: int = DEFAULT_ISO_CAP, leaf_cap: int = DEFAULT_LEAF_CAP) -> CanonicalForm:
    if family.n > cap:
        raise ResourceCapError(f"n = {family.n} exceeds the isomorphism cap {cap}")
    if not family.members:
        return CanonicalForm(family, Permutation.identity(family.n))
    s = _Search(family, leaf_cap)
    s.search(s.initial(family), [])
    image, colors = s.best
    perm = Permutation(tuple(c + 1 for c in colors))
    return CanonicalForm(SetFamily(family.n, family.k, image), perm)


def distinguishing_invariant(f1: SetFamily, f2: SetFamily) -> str | None:
    """Name of the cheapest invariant that separates the two families."""
    if len(f1) != len(f2):
        return f"size ({len(f1)} vs {len(f2)})"
    if degree_multiset(f1) != degree_multiset(f2):
        return "degree multiset"
    if codegree_multiset(f1) != codegree_multiset(f2):
        return "co-degree multiset"
    if canonical_form(f1).canonical != canonical_form(f2).canonical:
        return "canonical form"
    return None


def are_isomorphic(f1: SetFamily, f2: SetFamily, cap: int = DEFAULT_ISO_CAP) -> Permutation | None:
    """A relabeling mapping ``f1`` onto ``f2``, or None."""
    if (f1.n, f1.k) != (f2.n, f2.k):
        raise ParameterError(f"parameters differ: (n,k)=({f1.n},{f1.k}) vs ({f2.n},{f2.k})")
    if len(f1) != len(f2) or degree_multiset(f1) != degree_multiset(f2):
        return None
    c1 = canonical_form(f1, cap)
    c2 = canonical_form(f2, cap)
    if c1.canonical != c2.canonical:
        return None
    return c1.relabeling.then(c2.relabeling.inverse())
