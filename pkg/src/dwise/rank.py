"""Size comparisons between the extremal families: thresholds, rank tables,
exact checks of the ordering inequalities, and the expected top-six rankings.

All arithmetic is on Python integers.  Half-integer bounds such as
``(k-d-1/2) * C(n-d, k-d)`` are compared after doubling both sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from .constructors import FamilyId, construct, formula_size, validate_params
from .setcore import ParameterError, binomial

CROSS_CHECK_MAX_N = 16

H = lambda l: FamilyId("H", l)  # noqa: E731
G = FamilyId("G")
S, S1, S2, S3 = FamilyId("S"), FamilyId("S1"), FamilyId("S2"), FamilyId("S3")


# ---------------------------------------------------------------------------
# thresholds


def _ceil_e_times(N: int) -> int:
    """``ceil(e * N)`` for a positive integer N, exactly.

    ``e`` is bracketed by ``sum_{j<=m} 1/j!`` and that sum plus ``1/(m*m!)``;
    m is doubled until both brackets agree on the floor.  ``e*N`` is never an
    integer, so the ceiling is that floor plus one.
    """
    m = 8
    while True:
        M = factorial(m)
        s = sum(M // factorial(j) for j in range(m + 1))
        lo = N * s // M
        hi = (N * (s * m + 1)) // (M * m)
        if lo == hi:
            return lo + 1
        m *= 2


def n0(k: int, d: int) -> int:
    return d + _ceil_e_times((k - d) * (k * k * 2**k) ** (2**k))


def n1(k: int, d: int) -> int:
    return d + 2 * (k - d) ** 2 * (k ** (k - d) - 1) ** k * factorial(k)


def n2(k: int, d: int) -> int:
    return (d + 1) ** 2 if k == d + 1 else n1(k, d)


@dataclass
class ThresholdReport:
    k: int
    d: int
    n0: int
    n1: int
    n2: int
    maximality_bound: int
    clause_thresholds: dict[str, int] = field(default_factory=dict)
    n0_is_ceiling: bool = True

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "n0": str(self.n0),
            "n0_is_ceiling": self.n0_is_ceiling,
            "n1": str(self.n1),
            "n2": str(self.n2),
            "maximality_bound": self.maximality_bound,
            "clause_thresholds": self.clause_thresholds,
        }


def thresholds(k: int, d: int) -> ThresholdReport:
    """``n0`` is rounded up (``e`` is irrational); the others are exact.

    ``maximality_bound`` is ``k*d``: above it every constructed family is
    maximal.  ``clause_thresholds`` maps each ordering clause defined at
    (k, d) to the least n from which it applies.
    """
    if not k > d >= 3:
        raise ParameterError("need k > d >= 3")
    table = {c.cid: c.min_n for c in clauses(k, d)}
    return ThresholdReport(k, d, n0(k, d), n1(k, d), n2(k, d), k * d, table)


# ---------------------------------------------------------------------------
# rank tables


def catalogue_families(k: int, d: int) -> list[FamilyId]:
    """Families named by the classification at (k, d), one entry per l."""
    if k == d + 1:
        return [H(2), H(3)]
    ls = {k - d, k - d + 1, k - d + 2}
    if k <= 2 * d + 1:
        ls.add(2)
    out = [H(l) for l in sorted(ls)] + [G]
    if d == 3:
        out += [S, S1]
        if k >= 6:
            out += [S2, S3]
    return out


@dataclass
class RankEntry:
    family: FamilyId
    size: int
    rank: int
    tie_group: int

    @property
    def label(self) -> str:
        return self.family.label()


@dataclass
class RankTable:
    k: int
    d: int
    n: int
    entries: list[RankEntry]
    invalid: dict[str, str] = field(default_factory=dict)
    cross_checked: bool = False

    def order(self) -> list[str]:
        return [e.label for e in self.entries]

    def groups(self) -> list[list[FamilyId]]:
        out: list[list[FamilyId]] = []
        for e in self.entries:
            if len(out) < e.tie_group:
                out.append([])
            out[-1].append(e.family)
        return out

    def size_of(self, fid: FamilyId) -> int:
        for e in self.entries:
            if e.family == fid:
                return e.size
        raise KeyError(fid.label())

    def csv_rows(self) -> list[list]:
        rows = [["family", "l", "size", "rank", "tie-group"]]
        for e in self.entries:
            rows.append([e.family.tag, "" if e.family.l is None else e.family.l, e.size, e.rank, e.tie_group])
        return rows

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "n": self.n,
            "entries": [
                {"family": e.label, "l": e.family.l, "size": e.size, "rank": e.rank, "tie_group": e.tie_group}
                for e in self.entries
            ],
            "invalid": self.invalid,
            "cross_checked": self.cross_checked,
        }


def rank_table(k: int, d: int, n: int, families: list[FamilyId] | None = None) -> RankTable:
    """Sizes sorted descending; equal sizes share a tie group.

    ``rank`` is the 1-based position in the sorted list and ``tie_group`` the
    1-based index of the distinct size.  For n <= 16 every size is also
    checked against an explicit construction.
    """
    fams = catalogue_families(k, d) if families is None else families
    sized = []
    invalid = {}
    check = n <= CROSS_CHECK_MAX_N
    for fid in fams:
        problem = validate_params(fid, n, k, d)
        if problem:
            invalid[fid.label()] = problem
            continue
        size = formula_size(fid, n, k, d)
        if check:
            built = len(construct(fid, n, k, d))
            if built != size:
                raise AssertionError(f"{fid.label()} at n={n}: formula {size} != construction {built}")
        sized.append((fid, size))
    sized.sort(key=lambda t: (-t[1], t[0].label()))
    entries = []
    group = 0
    prev = None
    for i, (fid, size) in enumerate(sized, start=1):
        if size != prev:
            group += 1
            prev = size
        entries.append(RankEntry(fid, size, i, group))
    return RankTable(k, d, n, entries, invalid, check)


# ---------------------------------------------------------------------------
# ordering clauses


@dataclass(frozen=True)
class Clause:
    cid: str
    lhs: FamilyId
    rel: str  # ">", "<", "=", or "bound>" / "bound<" against (k-d-1/2) C(n-d,k-d)
    rhs: FamilyId | None
    condition: str
    holds: Callable[[int], bool]
    min_n: int


@dataclass
class ClauseReport:
    cid: str
    statement: str
    condition: str
    applicable: bool
    lhs: int | None
    rhs: int | None
    passed: bool | None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "clause": self.cid,
            "statement": self.statement,
            "condition": self.condition,
            "applicable": self.applicable,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "note": self.note,
        }


def _first_n(k: int, pred: Callable[[int], bool], families: list[FamilyId], d: int) -> int:
    # both the condition and family validity are monotone in n
    def ok(n: int) -> bool:
        return pred(n) and all(validate_params(f, n, k, d) is None for f in families)

    lo, hi = k, k + 1
    while not ok(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def clauses(k: int, d: int) -> list[Clause]:
    """All ordering clauses whose (k, d) hypotheses hold.

    Each clause's n-condition is monotone in n; ``min_n`` is its least
    solution at which every family involved is defined.
    """
    out: list[Clause] = []

    def add(cid, lhs, rel, rhs, condition, pred):
        fams = [lhs] + ([rhs] if rhs is not None else [])
        out.append(Clause(cid, lhs, rel, rhs, condition, pred, _first_n(k, pred, fams, d)))

    if d < 3:
        return out
    # H(k-d+1) against G
    if k >= d + 1:
        add("HG.1", H(k - d + 1), ">", G, "n >= 2k-d+1", lambda n: n >= 2 * k - d + 1)
    if k >= d + 4:
        add("HG.2a", H(k - d), "<", G, "n > max(2k+6, 24(d-1))", lambda n: n > max(2 * k + 6, 24 * (d - 1)))
    if k in (d + 2, d + 3):
        add("HG.2b", H(k - d), ">", G, "n >= 2k-d+2", lambda n: n >= 2 * k - d + 2)
    # the d = 3 families
    if d == 3:
        if k >= 5:
            c = lambda n: n >= 2 * k - 2  # noqa: E731
            add("HS.1a", G, ">", S1, "n >= 2k-2", c)
            add("HS.1b", S1, ">", S, "n >= 2k-2", c)
        if k >= 6:
            add("HS.1c", S, ">", S3, "n >= 2k-2", lambda n: n >= 2 * k - 2)
            add("HS.1d", S3, "=", S2, "n >= 2k-2", lambda n: n >= 2 * k - 2)
        if 5 <= k <= 7:
            add("HS.2", H(k - 3), ">", S1, "n >= 2k-1", lambda n: n >= 2 * k - 1)
        if k == 8:
            add("HS.3", H(5), "<", S, "n >= 22", lambda n: n >= 22)
            add("HS.4b", H(5), ">", S2, "n >= 11", lambda n: n >= 11)
        if k >= 9:
            add("HS.4a", H(k - 3), "<", S2, "n > max(48, 2k+10)", lambda n: n > max(48, 2 * k + 10))
    # consecutive windows
    for l in range(3, k - d + 2):
        def pred(n, l=l):
            gap = n - k - 2
            return gap > 0 and gap ** (l - 2) > (d - 1) * (k - d) ** (l - 2)

        add(f"HH.step(l={l})", H(l + 1), ">", H(l), f"n > (d-1)^(1/{l - 2})(k-d)+k+2", pred)
    # H(2) against the other windows and G
    for l in range(3, min(d + 1, k - d + 2) + 1):
        add(f"HA.1a(l={l})", H(2), ">", H(l), "none", lambda n: True)
    big = d * (d - 1) * (k - d) * 2 ** (k - d - 1)
    for l in range(d + 2, k - d + 3):
        add(f"HA.1b(l={l})", H(2), "<", H(l), "n > d(d-1)(k-d)2^(k-d-1)", lambda n, big=big: n > big)
    if d + 1 <= k <= 2 * d + 1:
        add("HA.2", H(2), ">", G, "n >= 3d+3", lambda n: n >= 3 * d + 3)
    # lower bounds (k-d-1/2) C(n-d, k-d)
    if k >= d + 2:
        nb = 2 * k * (k - d) ** 3 + d
        rel = "bound>" if k < 2 * d + 2 else "bound<"
        add("LB.A", H(2), rel, None, "n >= 2k(k-d)^3+d", lambda n, nb=nb: n >= nb)
        for l in range(k - d, k - d + 3):
            add(f"LB.H(l={l})", H(l), "bound>", None, "n >= 2k(k-d)^3+d", lambda n, nb=nb: n >= nb)
    if k >= d + 1:
        ng = k * (k - d) ** 2 + d
        add("LB.G", G, "bound>", None, "n >= k(k-d)^2+d", lambda n, ng=ng: n >= ng)
    if d == 3:
        ns = 2 * k * (k - 3) ** 3 + 3
        fams = ([S, S1] if k >= 5 else []) + ([S2, S3] if k >= 6 else [])
        for f in fams:
            add(f"LB.{f.label()}", f, "bound>", None, "n >= 2k(k-3)^3+3", lambda n, ns=ns: n >= ns)
    return out


def _statement(c: Clause) -> str:
    if c.rel.startswith("bound"):
        return f"|{c.lhs.label()}| {c.rel[-1]} (k-d-1/2)C(n-d,k-d)"
    return f"|{c.lhs.label()}| {c.rel} |{c.rhs.label()}|"


def evaluate_clause(c: Clause, k: int, d: int, n: int) -> ClauseReport:
    """Exact verdict when the clause applies; raw values otherwise."""
    fams = [c.lhs] + ([c.rhs] if c.rhs is not None else [])
    defined = all(validate_params(f, n, k, d) is None for f in fams)
    applicable = defined and c.holds(n)
    lhs = rhs = None
    note = ""
    if defined:
        lhs = formula_size(c.lhs, n, k, d)
        if c.rhs is not None:
            rhs = formula_size(c.rhs, n, k, d)
        else:
            lhs, rhs = 2 * lhs, (2 * (k - d) - 1) * binomial(n - d, k - d)
            note = "both sides doubled"
    else:
        note = "family undefined at this n"
    passed = None
    if applicable:
        op = c.rel[-1]
        passed = lhs > rhs if op == ">" else lhs < rhs if op == "<" else lhs == rhs
    elif defined:
        note = "condition not met; raw values only"
    return ClauseReport(c.cid, _statement(c), c.condition, applicable, lhs, rhs, passed, note)


def verify_orderings(k: int, d: int, n: int) -> list[ClauseReport]:
    return [evaluate_clause(c, k, d, n) for c in clauses(k, d)]


# ---------------------------------------------------------------------------
# expected rankings


def expected_ranking(k: int, d: int) -> list[list[FamilyId]]:
    """Expected order of the largest maximal families for large n.

    Position i holds the family (or tie group) expected to be the i-th
    largest.  Six positions for d = 3 and k >= 5, four for other k >= d+2,
    two for k = d+1.
    """
    if not k > d >= 3:
        raise ParameterError("need k > d >= 3")
    first = H(2) if k <= 2 * d - 1 else H(k - d + 2)
    if k <= 2 * d - 1:
        second = H(k - d + 2)
    elif k == 2 * d:
        second = H(2)
    else:
        second = H(k - d + 1)
    out = [[first], [second]]
    if k == d + 1:
        return out
    if k <= 2 * d:
        out.append([H(k - d + 1)])
    elif k == 2 * d + 1:
        out.append([H(2)])
    else:
        out.append([G])
    if k == d + 2:
        out.append([G])
    elif k == d + 3:
        out.append([H(3)])
    elif k <= 2 * d + 1:
        out.append([G])
    elif d == 3:
        out.append([S1])
    else:
        out.append([H(k - d)])
    if d == 3:
        fifth = {5: S1, 6: G, 7: H(4)}.get(k, S)
        out.append([fifth])
        if k == 5:
            out.append([S])
        elif k in (6, 7):
            out.append([S1])
        elif k == 8:
            out.append([H(5)])
        else:
            out.append([S2, S3])
    return out


def chain_threshold(k: int, d: int) -> int:
    """Least n from which every inequality clause (not the bounds) applies."""
    return max((c.min_n for c in clauses(k, d) if not c.rel.startswith("bound")), default=k + 3)


def ranking_consistency(k: int, d: int, n: int) -> tuple[bool, list[list[str]], list[list[str]]]:
    """Compare the top groups of the rank table with the expected ranking."""
    expected = expected_ranking(k, d)
    table = rank_table(k, d, n)
    got = table.groups()[: len(expected)]
    exp_labels = [sorted(f.label() for f in g) for g in expected]
    got_labels = [sorted(f.label() for f in g) for g in got]
    return exp_labels == got_labels, exp_labels, got_labels
