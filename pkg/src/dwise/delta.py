"""Delta-system (sunflower) toolkit: kernel degrees, sunflower search, the
B1/B2/B3 kernel decomposition, superset degrees and cover/matching numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .setcore import (
    ParameterError,
    ResourceCapError,
    SetFamily,
    elements_of,
    minimal_elements,
)

DEFAULT_KERNEL_CAP = 200_000
DEFAULT_EDGE_CAP = 64


@dataclass(frozen=True)
class KernelReport:
    kernel: int
    degree: int
    witness: tuple[int, ...]


@dataclass
class BDecomposition:
    b1: list[int]
    b2: list[int]
    b3: list[int]
    levels: dict[int, list[int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "b1": [elements_of(x) for x in self.b1],
            "b2": [elements_of(x) for x in self.b2],
            "b3": [elements_of(x) for x in self.b3],
            "levels": {str(i): [elements_of(x) for x in lv] for i, lv in sorted(self.levels.items())},
        }


@dataclass(frozen=True)
class CoverMatchingReport:
    tau: int
    nu: int
    cover: int
    matching: tuple[int, ...]


def max_disjoint(parts: list[int], target: int | None = None) -> list[int]:
    """Exact maximum collection of pairwise disjoint masks (branch and bound).

    Stops as soon as ``target`` sets are found.  Returns indices into
    ``parts``.  The bound is the count of remaining sets, tightened by
    ``|union of remaining| // smallest remaining size``.
    """
    order = sorted(range(len(parts)), key=lambda i: (parts[i].bit_count(), parts[i]))
    masks = [parts[i] for i in order]
    best: list[int] = []
    chosen: list[int] = []

    if any(m == 0 for m in masks):
        raise ParameterError("parts must be nonempty")

    def bound(start: int, used: int) -> int:
        union = 0
        count = 0
        smallest = None
        for m in masks[start:]:
            if m & used == 0:
                union |= m
                count += 1
                if smallest is None:
                    smallest = m.bit_count()
        if count == 0:
            return 0
        return min(count, union.bit_count() // smallest)

    class _Done(Exception):
        pass

    def rec(start: int, used: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if target is not None and len(best) >= target:
                raise _Done
        if len(chosen) + bound(start, used) <= len(best):
            return
        for i in range(start, len(masks)):
            m = masks[i]
            if m & used:
                continue
            chosen.append(i)
            rec(i + 1, used | m)
            chosen.pop()
            if len(chosen) + bound(i + 1, used) <= len(best):
                return

    try:
        rec(0, 0)
    except _Done:
        pass
    return sorted(order[i] for i in best)


def superset_degree(family: SetFamily, X: int) -> int:
    return sum(1 for m in family.members if m & X == X)


def kernel_degree(family: SetFamily, X: int, target: int | None = None) -> KernelReport:
    """Size of the largest Delta-system in the family with kernel exactly X."""
    if X.bit_count() >= family.k:
        raise ParameterError("kernel must have fewer than k elements")
    holders = [m for m in family.members if m & X == X]
    outside = [m & ~X for m in holders]
    picked = max_disjoint(outside, target)
    witness = tuple(holders[i] for i in picked)
    return KernelReport(X, len(witness), witness)


def is_delta_system(sets, kernel: int) -> bool:
    return all(a & b == kernel for a, b in combinations(sets, 2))


def find_sunflower(family: SetFamily, s: int) -> tuple[int, tuple[int, ...]] | None:
    """Some s members whose pairwise intersections all equal one kernel.

    Any Delta-system of size >= 2 has its kernel equal to the intersection of
    two of its members, so only pairwise intersections are tried as kernels,
    in increasing order.  Returns ``(kernel, members)`` or None.
    """
    if s < 2:
        raise ParameterError("s must be >= 2")
    members = family.members
    if len(members) < s:
        return None
    kernels = sorted({a & b for a, b in combinations(members, 2)} | {0})
    for K in kernels:
        holders = [m for m in members if m & K == K]
        if len(holders) < s:
            continue
        picked = max_disjoint([m & ~K for m in holders], s)
        if len(picked) >= s:
            return K, tuple(holders[i] for i in picked[:s])
    return None


def b1_threshold(size: int, k: int, d: int) -> int:
    return k ** (size - d + 1)


def b_decomposition(family: SetFamily, d: int, cap: int = DEFAULT_KERNEL_CAP) -> BDecomposition:
    """Kernels of large Delta-systems and the sets they leave uncovered.

    ``b1`` holds every X with ``d <= |X| < k`` that is the kernel of a
    Delta-system of size ``k**(|X|-d+1)``; ``b2`` its inclusion-minimal
    elements; ``b3`` the members containing no element of ``b2``.
    Candidate kernels are restricted to subsets of members.
    """
    k = family.k
    candidates: set[int] = set()
    for m in family.members:
        elems = elements_of(m)
        for size in range(d, k):
            for combo in combinations(elems, size):
                x = 0
                for e in combo:
                    x |= 1 << (e - 1)
                candidates.add(x)
        if len(candidates) > cap:
            raise ResourceCapError(f"more than {cap} candidate kernels")
    b1 = []
    for X in sorted(candidates):
        need = b1_threshold(X.bit_count(), k, d)
        if kernel_degree(family, X, target=need).degree >= need:
            b1.append(X)
    b2 = minimal_elements(b1)
    b3 = [m for m in family.members if not any(m & x == x for x in b2)]
    levels: dict[int, list[int]] = {i: [] for i in range(d, k + 1)}
    for x in sorted(b2 + b3):
        levels.setdefault(x.bit_count(), []).append(x)
    return BDecomposition(b1, b2, b3, levels)


def cover_and_matching(edges: list[int], cap: int = DEFAULT_EDGE_CAP) -> CoverMatchingReport:
    """Exact cover number and matching number of a small hypergraph."""
    if len(edges) > cap:
        raise ResourceCapError(f"more than {cap} edges")
    edges = sorted(set(edges))
    if any(e == 0 for e in edges):
        raise ParameterError("an empty edge cannot be covered")
    matching = tuple(edges[i] for i in max_disjoint(edges))

    best_cover = 0
    for e in edges:
        best_cover |= e & -e
    best_size = best_cover.bit_count()

    def rec(cover: int) -> None:
        nonlocal best_cover, best_size
        size = cover.bit_count()
        if size >= best_size:
            return
        open_edges = [e for e in edges if not e & cover]
        if not open_edges:
            best_cover, best_size = cover, size
            return
        # disjoint open edges need distinct cover vertices
        if size + len(max_disjoint(open_edges, best_size - size)) >= best_size:
            return
        e = min(open_edges, key=lambda x: (x.bit_count(), x))
        rest = e
        while rest:
            v = rest & -rest
            rec(cover | v)
            rest ^= v

    rec(0)
    return CoverMatchingReport(best_size, len(matching), best_cover, matching)
