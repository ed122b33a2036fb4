"""Exact primitives: subsets of [n] as integer bit masks, uniform families,
big-integer binomials, the permutation action and intersection closures.

A subset of ``[n] = {1, ..., n}`` is an ``int`` whose bit ``i - 1`` is set iff
``i`` belongs to the subset.  Comparing masks as integers gives the fixed total
order used everywhere (little-endian bit vectors, i.e. colex order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_N = 128
DEFAULT_CLOSURE_CAP = 5_000_000


class ParameterError(ValueError):
    """Raised when parameters or inputs violate a documented constraint."""


class ResourceCapError(RuntimeError):
    """Raised when an exact computation would exceed its configured cap."""


# ---------------------------------------------------------------------------
# masks


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        if x < 1:
            raise ParameterError(f"element {x} outside [1, n]")
        m |= 1 << (x - 1)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def interval(a: int, b: int) -> int:
    """Mask of ``[a, b]``; empty when ``a > b``."""
    if a > b:
        return 0
    a = max(a, 1)
    return ((1 << b) - 1) & ~((1 << (a - 1)) - 1)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def fmt_set(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class Params:
    """Ground-set size ``n``, uniformity ``k``, intersection arity ``d`` and
    an optional window length ``l``."""

    n: int
    k: int
    d: int
    l: int | None = None

    def __post_init__(self) -> None:
        problem = self.violation()
        if problem:
            raise ParameterError(problem)

    def violation(self) -> str | None:
        n, k, d, l = self.n, self.k, self.d, self.l
        if d < 2:
            return "d < 2"
        if k < d:
            return "k < d"
        if n < k:
            return "n < k"
        if n > MAX_N:
            return f"n > capacity {MAX_N}"
        if l is not None:
            if l < 2:
                return "l < 2"
            if l > k - d + 2:
                return "l > k-d+2"
        return None


# ---------------------------------------------------------------------------
# counting


def binomial(a: int, b: int) -> int:
    """Exact ``C(a, b)``, zero whenever ``b < 0`` or ``b > a``."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def verify_pascal_identity(n: int, i: int, j: int) -> bool:
    """Check ``C(n,j) - C(n-i,j) == sum_{h=1..i} C(n-h, j-1)`` exactly."""
    if not (0 <= i <= n) or j < 1:
        raise ParameterError("need 0 <= i <= n and j >= 1")
    lhs = binomial(n, j) - binomial(n - i, j)
    rhs = sum(binomial(n - h, j - 1) for h in range(1, i + 1))
    return lhs == rhs


def k_subsets(n: int, k: int) -> Iterator[int]:
    """All k-subsets of [n] as masks, in increasing order (Gosper's hack)."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class SetFamily:
    """A k-uniform family over [n]; members are strictly increasing masks."""

    n: int
    k: int
    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not (0 <= self.k <= self.n <= MAX_N):
            raise ParameterError(f"bad family shape n={self.n}, k={self.k}")
        limit = 1 << self.n
        prev = -1
        for m in self.members:
            if m <= prev:
                raise ParameterError("members must be strictly increasing (no duplicates)")
            if m >= limit:
                raise ParameterError(f"member {fmt_set(m)} not inside [{self.n}]")
            if m.bit_count() != self.k:
                raise ParameterError(f"member {fmt_set(m)} does not have exactly {self.k} elements")
            prev = m

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int]) -> SetFamily:
        return cls(n, k, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls.from_masks(n, k, (mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._lookup

    @property
    def _lookup(self) -> frozenset[int]:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def as_lists(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def with_members(self, masks: Iterable[int]) -> SetFamily:
        return SetFamily.from_masks(self.n, self.k, masks)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "sets": self.as_lists()}

    @classmethod
    def from_json(cls, data: dict) -> SetFamily:
        try:
            n, k, sets = int(data["n"]), int(data["k"]), data["sets"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed family JSON: {exc}") from None
        masks = []
        for s in sets:
            s = [int(x) for x in s]
            if any(b <= a for a, b in zip(s, s[1:])):
                raise ParameterError(f"set {s} is not strictly increasing")
            if len(s) != k:
                raise ParameterError(f"set {s} does not have exactly {k} elements")
            if s and (s[0] < 1 or s[-1] > n):
                raise ParameterError(f"set {s} not inside [{n}]")
            masks.append(mask_of(s))
        if len(set(masks)) != len(masks):
            raise ParameterError("duplicate sets in family")
        return cls(n, k, tuple(sorted(masks)))


def load_family(path: str | Path) -> SetFamily:
    with open(path) as fh:
        return SetFamily.from_json(json.load(fh))


def dump_family(family: SetFamily, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(family.to_json(), fh)
        fh.write("\n")


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """``image[i - 1] == pi(i)`` for ``i`` in [n]."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise ParameterError("permutation image is not a bijection on [n]")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        img = list(range(1, n + 1))
        img[a - 1], img[b - 1] = b, a
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    def map_mask(self, mask: int) -> int:
        out = 0
        img = self.image
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << (img[i] - 1)
            mask >>= 1
            i += 1
        return out

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other.image[y - 1] for y in self.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, y in enumerate(self.image, start=1):
            inv[y - 1] = i
        return Permutation(tuple(inv))


def apply_permutation(family: SetFamily, perm: Permutation) -> SetFamily:
    if perm.n != family.n:
        raise ParameterError(f"permutation acts on [{perm.n}], family lives on [{family.n}]")
    return family.with_members(perm.map_mask(m) for m in family.members)


# ---------------------------------------------------------------------------
# intersection closure


def minimal_elements(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal elements of a collection, sorted ascending."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return sorted(kept)


class IntersectionClosure:
    """Minimal antichains of intersections of at most ``j`` members, for
    ``j = 0..depth``, maintained incrementally as members are added.

    ``levels[j]`` holds the inclusion-minimal elements of
    ``{ cap S : S subset of members, |S| <= j }`` where the empty
    intersection is the ground set.  ``origin`` maps every antichain element
    to one shortest tuple of members producing it.
    """

    def __init__(self, n: int, depth: int, cap: int = DEFAULT_CLOSURE_CAP) -> None:
        if depth < 0:
            raise ParameterError("closure depth must be >= 0")
        self.n = n
        self.depth = depth
        self.cap = cap
        self.work = 0
        ground = full_mask(n)
        self.levels: list[list[int]] = [[ground] for _ in range(depth + 1)]
        self.origin: dict[int, tuple[int, ...]] = {ground: ()}
        self.size = 0

    def copy(self) -> IntersectionClosure:
        other = IntersectionClosure.__new__(IntersectionClosure)
        other.n, other.depth, other.cap, other.work = self.n, self.depth, self.cap, self.work
        other.levels = [list(level) for level in self.levels]
        other.origin = dict(self.origin)
        other.size = self.size
        return other

    def add(self, member: int) -> None:
        # new level j: old level j, plus member & (old level j-1)
        old = self.levels
        new_levels = [old[0]]
        for j in range(1, self.depth + 1):
            fresh: dict[int, tuple[int, ...]] = {}
            for p in old[j - 1]:
                x = p & member
                if x not in fresh:
                    fresh[x] = self.origin[p] + (member,)
            self.work += len(old[j - 1])
            if self.work > self.cap:
                raise ResourceCapError(f"intersection closure exceeded node cap {self.cap}")
            for x, src in fresh.items():
                prev = self.origin.get(x)
                if prev is None or len(src) < len(prev):
                    self.origin[x] = src
            new_levels.append(minimal_elements(list(old[j]) + list(fresh)))
        self.levels = new_levels
        self.size += 1

    def antichain(self, depth: int | None = None) -> list[int]:
        j = self.depth if depth is None else depth
        return self.levels[j]

    def hits_all(self, candidate: int, depth: int | None = None) -> bool:
        """True iff ``candidate`` meets every element of the depth antichain."""
        return all(candidate & c for c in self.antichain(depth))


def intersection_closure(family: SetFamily, depth: int, cap: int = DEFAULT_CLOSURE_CAP) -> list[int]:
    """Inclusion-minimal intersections of between 1 and ``depth`` members.

    Built level by level; each level keeps only its minimal elements, which is
    enough because ``A`` containing ``B`` implies ``A & m`` contains ``B & m``.
    """
    if depth < 1:
        raise ParameterError("depth must be >= 1")
    if not family.members:
        return []
    return build_closure(family, depth, cap).antichain()


def build_closure(family: SetFamily, depth: int, cap: int = DEFAULT_CLOSURE_CAP) -> IntersectionClosure:
    """Closure over the whole family in one pass (faster than repeated ``add``)."""
    cl = IntersectionClosure(family.n, depth, cap)
    members = family.members
    if not members or depth == 0:
        for m in members:
            cl.size += 1
        return cl
    origin = cl.origin
    for m in members:
        origin.setdefault(m, (m,))
    level = minimal_elements(members)
    cl.levels[1] = level
    for j in range(2, depth + 1):
        fresh: dict[int, tuple[int, ...]] = {}
        for p in level:
            src = origin[p]
            for m in members:
                x = p & m
                if x not in fresh and x not in origin:
                    fresh[x] = src + (m,)
            cl.work += len(members)
            if cl.work > cap:
                raise ResourceCapError(f"intersection closure exceeded node cap {cap}")
        origin.update(fresh)
        nxt = minimal_elements(level + list(fresh))
        cl.levels[j] = nxt
        if nxt == level:
            for jj in range(j + 1, depth + 1):
                cl.levels[jj] = nxt
            break
        level = nxt
    cl.size = len(members)
    return cl


__all__ = [
    "MAX_N",
    "IntersectionClosure",
    "ParameterError",
    "Params",
    "Permutation",
    "ResourceCapError",
    "SetFamily",
    "apply_permutation",
    "binomial",
    "build_closure",
    "dump_family",
    "elements_of",
    "fmt_set",
    "full_mask",
    "intersection_closure",
    "interval",
    "k_subsets",
    "load_family",
    "mask_of",
    "minimal_elements",
    "verify_pascal_identity",
]
