"""Named extremal families H(k,d,l), G(k,d), S(k,3), S1..S3(k,3) and their
closed-form sizes.

Every family is built literally from its defining comprehension: all k-subsets
of [n] are scanned and kept when they satisfy one of the union parts, and the
explicitly listed sets are merged in.  Sizes come from independent closed
formulas, so ``len(construct(...)) == formula_size(...)`` is a genuine check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .setcore import (
    MAX_N,
    ParameterError,
    SetFamily,
    binomial,
    interval,
    k_subsets,
    mask_of,
)

TAGS = ("H", "G", "S", "S1", "S2", "S3", "A", "B", "C")


@dataclass(frozen=True)
class FamilyId:
    tag: str
    l: int | None = None

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise ParameterError(f"unknown family tag {self.tag!r}")

    def resolve(self, k: int, d: int) -> FamilyId:
        """Replace the aliases A, B, C by the matching H window."""
        if self.tag == "A":
            return FamilyId("H", 2)
        if self.tag == "B":
            return FamilyId("H", k - d + 2)
        if self.tag == "C":
            return FamilyId("H", k - d + 1)
        return self

    def label(self) -> str:
        return f"H({self.l})" if self.tag == "H" else self.tag

    @classmethod
    def parse(cls, text: str) -> FamilyId:
        """Parse ``H3``, ``H(3)``, ``G``, ``S1`` ..."""
        t = text.strip().replace("(", "").replace(")", "")
        if t.startswith("H") and len(t) > 1:
            return cls("H", int(t[1:]))
        return cls(t)


def validate_params(fid: FamilyId, n: int, k: int, d: int) -> str | None:
    """First violated constraint for building ``fid`` at (n, k, d), or None."""
    if d < 3:
        return "d < 3 (constructions need k >= d+1 >= 4)"
    if k < d + 1:
        return "k < d+1"
    if fid.tag == "H" and fid.l is None:
        return "H requires a window length l"
    f = fid.resolve(k, d)
    if f.tag == "H":
        if f.l < 2:
            return "l < 2"
        if f.l > k - d + 2:
            return "l > k-d+2"
        if n < k + 1:
            return "H requires n >= k+1"
    elif f.tag == "G":
        if n < k + 2:
            return "G requires n >= k+2"
    else:
        if d != 3:
            return f"{f.tag} requires d = 3"
        if f.tag in ("S", "S1") and k < d + 2:
            return f"{f.tag} requires k >= d+2"
        if f.tag in ("S2", "S3") and k < d + 3:
            return f"{f.tag} requires k >= d+3"
        if n < k + 3:
            return f"{f.tag} requires n >= k+3"
    return None


def _check(fid: FamilyId, n: int, k: int, d: int) -> FamilyId:
    problem = validate_params(fid, n, k, d)
    if problem:
        raise ParameterError(f"{fid.label()} at n={n}, k={k}, d={d}: {problem}")
    return fid.resolve(k, d)


def _members(n: int, k: int, parts: list[Callable[[int], bool]], literals: list[int] = ()) -> SetFamily:
    chosen = [F for F in k_subsets(n, k) if any(p(F) for p in parts)]
    for m in literals:
        if m.bit_count() != k or m >> n:
            raise AssertionError(f"literal member {m:b} is not a {k}-subset of [{n}]")
    return SetFamily.from_masks(n, k, chosen + list(literals))


def _h_parts(k: int, d: int, l: int) -> list[Callable[[int], bool]]:
    core = interval(1, d - 1)
    window = interval(d, d + l - 1)
    return [
        lambda F: F & core == core and F & window != 0,
        lambda F: (F & core).bit_count() == d - 2 and F & window == window,
    ]


def _base3(k: int) -> list[Callable[[int], bool]]:
    # {F : [2] in F, F meets [3, k-1]}
    pair = interval(1, 2)
    mid = interval(3, k - 1)
    return [lambda F: F & pair == pair and F & mid != 0]


def construct(fid: FamilyId, n: int, k: int, d: int) -> SetFamily:
    f = _check(fid, n, k, d)
    if n > MAX_N:
        raise ParameterError(f"n > capacity {MAX_N}")
    iv = interval
    if f.tag == "H":
        return _members(n, k, _h_parts(k, d, f.l))

    if f.tag == "G":
        core = iv(1, d - 1)
        mid = iv(d, k - 1)
        tail = iv(2, k)
        lit = [tail | iv(i, i) for i in range(k + 2, n + 1)]
        lit += [iv(2, k - 1) | mask_of([k + 1, i]) for i in range(k + 2, n + 1)]
        top = core | iv(k, k + 1)
        block = iv(d, k + 1)
        parts = [
            lambda F: F & core == core and F & mid != 0,
            lambda F: F & top == top,
            lambda F: (F & core).bit_count() == d - 2 and F & block == block,
        ]
        return _members(n, k, parts, lit)

    pair = iv(1, 2)
    if f.tag in ("S", "S1"):
        cap3 = pair | iv(k, k + 2)
        parts = _base3(k) + [lambda F: F & cap3 == cap3]
        if f.tag == "S":
            win = iv(k, k + 2)
            mid = iv(3, k - 1)
            for i in (1, 2):
                need = iv(i, i) | mid
                parts.append(lambda F, need=need: F & need == need and (F & win).bit_count() == 2)
            return _members(n, k, parts)
        lit = [iv(2, k) | iv(i, i) for i in range(k + 1, n + 1)]
        lit += [
            iv(2, k + 2) & ~iv(k, k),
            iv(1, k + 1) & ~iv(2, 2),
            iv(1, k + 2) & ~mask_of([2, k + 1]),
        ]
        return _members(n, k, parts, lit)

    cap4 = pair | iv(k, k + 3)
    parts = _base3(k) + [lambda F: F & cap4 == cap4]
    if f.tag == "S2":
        lit = [
            iv(2, k + 1),
            iv(2, k - 1) | mask_of([k + 2, k + 3]),
            iv(2, k) | mask_of([k + 3]),
            iv(2, k + 2) & ~iv(k, k),
            iv(3, k) | mask_of([1, k + 2]),
            iv(3, k - 1) | mask_of([1, k + 1, k + 3]),
        ]
    else:
        lit = [
            iv(2, k) | mask_of([k + 2]),
            iv(2, k + 2) & ~iv(k, k),
            iv(2, k - 1) | mask_of([k + 1, k + 3]),
            iv(3, k + 1) | mask_of([1]),
            iv(3, k - 1) | mask_of([1, k + 1, k + 2]),
            iv(3, k - 1) | mask_of([1, k + 2, k + 3]),
        ]
    return _members(n, k, parts, lit)


def formula_size(fid: FamilyId, n: int, k: int, d: int) -> int:
    """Exact size from the closed formulas (no enumeration)."""
    f = _check(fid, n, k, d)
    C = binomial
    if f.tag == "H":
        l = f.l
        return C(n - d + 1, k - d + 1) - C(n - d - l + 1, k - d + 1) + (d - 1) * C(n - d - l + 1, k - d - l + 2)
    if f.tag == "G":
        return C(n - d + 1, k - d + 1) - C(n - k + 1, k - d + 1) + C(n - k - 1, k - d - 1) + 2 * (n - k) + d - 3
    head = C(n - 2, k - 2) - C(n - k + 1, k - 2)
    if f.tag == "S":
        return head + C(n - k - 2, k - 5) + 6
    if f.tag == "S1":
        return head + C(n - k - 2, k - 5) + n - k + 3
    return head + C(n - k - 3, k - 6) + 6


def closed_form_d_plus_1(l: int, n: int, d: int) -> int:
    """Linear closed forms of |H(d+1, d, l)| for l in {2, 3}."""
    if l == 2:
        return (d + 1) * n - d * d - 2 * d
    if l == 3:
        return 3 * n - 2 * d - 4
    raise ParameterError("closed forms exist for l = 2 and l = 3 only")


def applicable_ids(k: int, d: int) -> list[FamilyId]:
    """Every family of the catalogue that is defined at (k, d)."""
    out = [FamilyId("H", l) for l in range(2, k - d + 3)]
    if k >= d + 1:
        out.append(FamilyId("G"))
    if d == 3 and k >= 5:
        out += [FamilyId("S"), FamilyId("S1")]
    if d == 3 and k >= 6:
        out += [FamilyId("S2"), FamilyId("S3")]
    return out


def min_n(fid: FamilyId, k: int, d: int) -> int:
    f = fid.resolve(k, d)
    if f.tag == "H":
        return k + 1
    if f.tag == "G":
        return k + 2
    return k + 3
