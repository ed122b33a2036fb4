"""Certified decisions for d-wise / t-intersection, triviality, addability and
maximality.

Every negative verdict carries a witness that :func:`recheck` can validate
without trusting the code path that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations

from .setcore import (
    DEFAULT_CLOSURE_CAP,
    IntersectionClosure,
    ParameterError,
    SetFamily,
    build_closure,
    elements_of,
    full_mask,
    k_subsets,
)


@dataclass(frozen=True)
class Certificate:
    prop: str
    verdict: bool
    witness: tuple[int, ...] | None = None
    arity: int | None = None

    def to_json(self) -> dict:
        return {
            "property": self.prop,
            "verdict": self.verdict,
            "witness": None if self.witness is None else [elements_of(m) for m in self.witness],
        }


def _cap_all(n: int, masks) -> int:
    return reduce(lambda a, b: a & b, masks, full_mask(n))


def is_d_wise_intersecting(family: SetFamily, d: int, cap: int = DEFAULT_CLOSURE_CAP) -> Certificate:
    """Every d members (repetition allowed) share an element.

    Decided on the closure of intersections of at most d distinct members; a
    failing verdict reports a shortest tuple of members with empty
    intersection.  The empty family is vacuously d-wise intersecting.
    """
    if d < 2:
        raise ParameterError("d must be >= 2")
    if not family.members:
        return Certificate("d-wise-intersecting", True, arity=d)
    cl = build_closure(family, min(d, len(family)), cap)
    if 0 in cl.antichain():
        return Certificate("d-wise-intersecting", False, cl.origin[0], arity=d)
    return Certificate("d-wise-intersecting", True, arity=d)


def is_t_intersecting(family: SetFamily, t: int) -> Certificate:
    if t < 1:
        raise ParameterError("t must be >= 1")
    for a, b in combinations(family.members, 2):
        if (a & b).bit_count() < t:
            return Certificate("t-intersecting", False, (a, b), arity=t)
    return Certificate("t-intersecting", True, arity=t)


def is_trivial(family: SetFamily) -> int | None:
    """Smallest element common to all members, or None."""
    if not family.members:
        raise ParameterError("triviality is undefined for the empty family")
    common = _cap_all(family.n, family.members)
    if not common:
        return None
    return (common & -common).bit_length()


def min_intersection_size(family: SetFamily, m: int) -> int:
    """Smallest ``|A_1 & ... & A_m|`` over m distinct members (needs ``|F| >= m``)."""
    if len(family) < m:
        raise ParameterError(f"family has fewer than {m} members")
    cl = build_closure(family, m)
    return min(x.bit_count() for x in cl.antichain())


def _require_dwise(family: SetFamily, d: int) -> None:
    cert = is_d_wise_intersecting(family, d)
    if not cert.verdict:
        raise ParameterError(f"family is not {d}-wise intersecting")


def addability_closure(family: SetFamily, d: int) -> IntersectionClosure:
    """Closure whose top antichain every addable set must meet."""
    return build_closure(family, min(d - 1, len(family)))


def addable_sets(family: SetFamily, d: int) -> SetFamily:
    """All k-sets outside the family whose addition keeps it d-wise intersecting.

    A tuple of the enlarged family that uses the new set A is binding exactly
    when A meets the intersection of the remaining (at most d-1) members, so
    A is addable iff it meets every element of the depth-(d-1) closure.
    """
    _require_dwise(family, d)
    cl = addability_closure(family, d)
    gate = cl.antichain()
    out = [A for A in k_subsets(family.n, family.k) if A not in family and all(A & c for c in gate)]
    return SetFamily(family.n, family.k, tuple(out))


def is_maximal(family: SetFamily, d: int) -> Certificate:
    _require_dwise(family, d)
    gate = addability_closure(family, d).antichain()
    for A in k_subsets(family.n, family.k):
        if A not in family and all(A & c for c in gate):
            return Certificate("maximal", False, (A,), arity=d)
    return Certificate("maximal", True, arity=d)


def maximal_closure(family: SetFamily, d: int) -> SetFamily:
    """Greedily add the smallest addable set until none is left.

    One ascending pass suffices: a set rejected earlier can never become
    addable again, since adding members only adds constraints.
    """
    _require_dwise(family, d)
    depth = d - 1
    cl = IntersectionClosure(family.n, depth)
    for m in family.members:
        cl.add(m)
    chosen = set(family.members)
    for A in k_subsets(family.n, family.k):
        if A in chosen:
            continue
        if cl.hits_all(A):
            chosen.add(A)
            cl.add(A)
    return family.with_members(chosen)


def recheck(cert: Certificate, family: SetFamily) -> bool:
    """Independently confirm a certificate's witness against the family.

    For negative intersection verdicts the witnessed tuple must consist of
    members and have a too-small intersection.  For a negative maximality
    verdict the witnessed set must be outside the family and meet every
    intersection of d-1 members (found by unpruned expansion).  Positive
    verdicts carry no witness.
    """
    if cert.verdict:
        return cert.witness is None
    w = cert.witness
    if not w:
        return False
    if cert.prop == "d-wise-intersecting":
        return all(x in family for x in w) and len(w) <= cert.arity and _cap_all(family.n, w) == 0
    if cert.prop == "t-intersecting":
        return len(w) == 2 and all(x in family for x in w) and (w[0] & w[1]).bit_count() < cert.arity
    if cert.prop == "maximal":
        (A,) = w
        if A in family or A.bit_count() != family.k:
            return False
        return naive_addable(A, family.members, family.n, cert.arity)
    return False


def _all_intersections(members, start: int, rounds: int) -> set[int]:
    frontier = {start}
    seen = set(frontier)
    for _ in range(rounds):
        frontier = {x & m for x in frontier for m in members} - seen
        seen |= frontier
        if not frontier or 0 in seen:
            break
    return seen


def naive_dwise(members, n: int, d: int) -> bool:
    """Every intersection of d members (repetition allowed) is nonempty.

    Reference oracle: plain breadth-first expansion of intersection values,
    with no minimality pruning.
    """
    return 0 not in _all_intersections(tuple(members), full_mask(n), d)


def naive_addable(A: int, members, n: int, d: int) -> bool:
    """Reference check that ``A`` meets every intersection of d-1 members."""
    return 0 not in _all_intersections(tuple(members), A, d - 1)
