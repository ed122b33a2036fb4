"""Batch runner for the acceptance checks.

Each check returns a :class:`CheckResult`; failures never abort the run.
Checks that issue certificates log them, and the property check rechecks
every negative verdict in that log.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from threading import Lock

from .constructors import FamilyId, applicable_ids, closed_form_d_plus_1, construct, formula_size, min_n
from .delta import find_sunflower, is_delta_system, kernel_degree
from .iso import are_isomorphic
from .oracle import enumerate_maximal
from .rank import rank_table, verify_orderings
from .setcore import (
    Params,
    Permutation,
    SetFamily,
    apply_permutation,
    k_subsets,
    mask_of,
    verify_pascal_identity,
)
from .verify import (
    Certificate,
    is_d_wise_intersecting,
    is_maximal,
    is_t_intersecting,
    is_trivial,
    min_intersection_size,
    recheck,
)

PASS, FAIL, NA, SKIP = "pass", "fail", "not-applicable", "skipped"


@dataclass
class CheckResult:
    cid: int
    title: str
    status: str
    values: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0
    reason: str = ""

    def line(self) -> str:
        tag = {PASS: "PASS", FAIL: "FAIL", NA: "N/A ", SKIP: "SKIP"}[self.status]
        extra = f" ({self.reason})" if self.reason else ""
        return f"[{tag}] criterion {self.cid}: {self.title}{extra}"

    def to_json(self) -> dict:
        return {
            "id": self.cid,
            "title": self.title,
            "status": self.status,
            "values": self.values,
            "witnesses": self.witnesses,
            "seconds": round(self.seconds, 3),
            "reason": self.reason,
        }


@dataclass
class SuiteReport:
    profile: str
    entries: list[CheckResult]

    @property
    def ok(self) -> bool:
        return not any(e.status == FAIL for e in self.entries)

    def to_json(self) -> dict:
        return {"profile": self.profile, "ok": self.ok, "checks": [e.to_json() for e in self.entries]}


class CertificateLog:
    def __init__(self) -> None:
        self._items: list[tuple[Certificate, SetFamily]] = []
        self._lock = Lock()

    def add(self, cert: Certificate, family: SetFamily) -> Certificate:
        with self._lock:
            self._items.append((cert, family))
        return cert

    def negatives(self) -> list[tuple[Certificate, SetFamily]]:
        with self._lock:
            return [(c, f) for c, f in self._items if not c.verdict]


def _result(cid: int, title: str, failures: list, values: dict, start: float, reason: str = "") -> CheckResult:
    status = FAIL if failures else PASS
    return CheckResult(cid, title, status, values, failures[:20], time.perf_counter() - start, reason)


# ---------------------------------------------------------------------------
# 1


def formula_grid(max_n: int = 14):
    for d in (3, 4):
        for k in range(d + 1, min(d + 4, 8) + 1):
            for n in range(k + 3, max_n + 1):
                for fid in applicable_ids(k, d):
                    yield fid, n, k, d


def check_formulas(log: CertificateLog | None = None) -> CheckResult:
    start = time.perf_counter()
    failures = []
    count = 0
    for fid, n, k, d in formula_grid():
        count += 1
        built = len(construct(fid, n, k, d))
        size = formula_size(fid, n, k, d)
        if built != size:
            failures.append({"family": fid.label(), "n": n, "k": k, "d": d, "built": built, "formula": size})
    return _result(1, "formula-construction agreement", failures, {"compared": count}, start)


# ---------------------------------------------------------------------------
# 2

STATED_5_3_12 = [("H(2)", 108), ("H(4)", 102), ("H(3)", 99), ("G", 84), ("S1", 75), ("S", 71)]


def check_anchors(log: CertificateLog | None = None) -> CheckResult:
    start = time.perf_counter()
    failures = []
    values = {}
    for l, want in ((2, 53), (3, 41)):
        fid = FamilyId("H", l)
        got = formula_size(fid, 17, 4, 3)
        closed = closed_form_d_plus_1(l, 17, 3)
        built = len(construct(fid, 17, 4, 3))
        values[f"(4,3,17) {fid.label()}"] = got
        if not got == closed == built == want:
            failures.append({"family": fid.label(), "stated": want, "formula": got, "closed_form": closed, "built": built})
    table = rank_table(5, 3, 12)
    got_order = table.order()
    values["(5,3,12) order"] = got_order
    values["(5,3,12) sizes"] = {e.label: e.size for e in table.entries}
    want_order = [lab for lab, _ in STATED_5_3_12]
    if got_order != want_order:
        failures.append({"stated_order": want_order, "order": got_order})
    for lab, want in STATED_5_3_12:
        fid = FamilyId.parse(lab)
        got = table.size_of(fid)
        if got != want:
            built = len(construct(fid, 12, 5, 3))
            failures.append({"family": lab, "stated": want, "formula": got, "built": built})
    reason = ""
    if failures:
        reason = "; ".join(
            f"{f['family']} stated {f['stated']} but formula and construction give {f['formula']}"
            for f in failures
            if "family" in f
        )
    return _result(2, "concrete size anchors", failures, values, start, reason)


# ---------------------------------------------------------------------------
# 3

MAXIMALITY_CASES = ((4, 3, 13), (5, 3, 16))


def check_maximality(log: CertificateLog | None = None) -> CheckResult:
    start = time.perf_counter()
    failures = []
    values = {}
    for k, d, n in MAXIMALITY_CASES:
        for fid in applicable_ids(k, d):
            fam = construct(fid, n, k, d)
            t0 = time.perf_counter()
            dw = is_d_wise_intersecting(fam, d)
            cert = is_maximal(fam, d) if dw.verdict else Certificate("maximal", False)
            if log is not None:
                log.add(dw, fam)
                log.add(cert, fam)
            triv = is_trivial(fam)
            values[f"({k},{d},{n}) {fid.label()}"] = {
                "size": len(fam),
                "maximal": cert.verdict,
                "seconds": round(time.perf_counter() - t0, 3),
            }
            if not (dw.verdict and cert.verdict and triv is None):
                failures.append({"family": fid.label(), "k": k, "d": d, "n": n, "certificate": cert.to_json()})
    return _result(3, "maximality above n = kd", failures, values, start)


# ---------------------------------------------------------------------------
# 4


def check_g_vs_h3(log: CertificateLog | None = None) -> CheckResult:
    start = time.perf_counter()
    failures = []
    values = {}
    for n in (10, 13):
        g = construct(FamilyId("G"), n, 4, 3)
        h = construct(FamilyId("H", 3), n, 4, 3)
        w = are_isomorphic(g, h)
        swap = Permutation.transposition(n, 1, 3)
        ok_w = w is not None and apply_permutation(g, w) == h
        ok_swap = apply_permutation(g, swap) == h
        values[n] = {"witness": None if w is None else list(w.image), "transposition_maps": ok_swap}
        if not (ok_w and ok_swap):
            failures.append({"n": n, "witness_ok": ok_w, "transposition_ok": ok_swap})
    return _result(4, "G(4,3) isomorphic to H(4,3,3)", failures, values, start)


# ---------------------------------------------------------------------------
# 5


def kernel_grid(max_n: int = 13):
    for fid, n, k, d in formula_grid(max_n):
        yield fid, n, k, d


def check_kernel_bound(log: CertificateLog | None = None) -> CheckResult:
    start = time.perf_counter()
    failures = []
    checked = 0
    families = 0
    for fid, n, k, d in kernel_grid():
        fam = construct(fid, n, k, d)
        families += 1
        bound = k - d + 2
        kernels = set()
        for m in fam.members:
            rest = m
            els = []
            while rest:
                low = rest & -rest
                els.append(low)
                rest ^= low
            for combo in combinations(els, d - 1):
                kernels.add(sum(combo))
        for X in kernels:
            checked += 1
            rep = kernel_degree(fam, X, target=bound + 1)
            if rep.degree > bound:
                failures.append({"family": fid.label(), "n": n, "k": k, "d": d, "X": X, "degree": rep.degree})
    h = construct(FamilyId("H", 3), 8, 4, 3)
    exact = kernel_degree(h, mask_of([1, 2]))
    if exact.degree != 3 or not is_delta_system(exact.witness, mask_of([1, 2])):
        failures.append({"H(4,3,3) n=8 X={1,2}": exact.degree})
    values = {"families": families, "kernels": checked, "H(4,3,3) n=8 X={1,2}": exact.degree}
    return _result(5, "kernel degree bound k-d+2", failures, values, start)


# ---------------------------------------------------------------------------
# 6

ORDER_MAX_N = 200


def ordering_grid():
    """(k, d, n) with every catalogue family defined, up to n = 200."""
    for d in (3, 4):
        for k in range(d + 1, d + 6):
            for n in range(k + 3, ORDER_MAX_N + 1):
                yield k, d, n


def check_orderings(log: CertificateLog | None = None) -> CheckResult:
    start = time.perf_counter()
    failures = []
    applied = 0
    skipped = 0
    for k, d, n in ordering_grid():
        for r in verify_orderings(k, d, n):
            if not r.applicable:
                skipped += 1
                continue
            applied += 1
            if not r.passed:
                failures.append({"k": k, "d": d, "n": n, **r.to_json()})
    reason = ""
    if failures:
        reason = "; ".join(f"{f['statement']} fails at (k,d,n)=({f['k']},{f['d']},{f['n']}): {f['lhs']} vs {f['rhs']}" for f in failures[:3])
    return _result(6, "ordering inequalities", failures, {"applicable": applied, "not_applicable": skipped}, start, reason)


# ---------------------------------------------------------------------------
# 7

ORACLE_CASES = ((6, 3, 3), (7, 3, 3), (7, 4, 4))


def complete_family(n: int, k: int) -> SetFamily:
    """All k-subsets of [k+1], on ground set [n]."""
    return SetFamily.from_masks(n, k, k_subsets(k + 1, k))


def check_oracle(log: CertificateLog | None = None) -> CheckResult:
    from .iso import canonical_form

    start = time.perf_counter()
    failures = []
    values = {}
    for n, k, d in ORACLE_CASES:
        res = enumerate_maximal(Params(n, k, d))
        want = canonical_form(complete_family(n, k)).canonical
        reps = [c.representative for c in res.classes]
        values[f"({n},{k},{d})"] = {
            "classes": [c.size for c in res.classes],
            "exhausted": res.exhausted,
            "nodes": res.nodes,
            "seconds": round(res.seconds, 2),
        }
        for rep in reps:
            cert = is_maximal(rep, d)
            if log is not None:
                log.add(cert, rep)
            if not cert.verdict or is_trivial(rep) is not None:
                failures.append({"case": (n, k, d), "uncertified": rep.as_lists()})
        if not res.exhausted or len(reps) != 1 or reps[0] != want or res.seconds > 120:
            failures.append({"case": (n, k, d), "classes": [r.as_lists() for r in reps], "exhausted": res.exhausted})
    return _result(7, "oracle base cases", failures, values, start)


# ---------------------------------------------------------------------------
# 8


def random_graph(rng: random.Random, n: int, edges: int) -> SetFamily:
    pool = list(k_subsets(n, 2))
    return SetFamily.from_masks(n, 2, rng.sample(pool, edges))


def depth_grid(max_n: int = 10):
    for d in (3, 4):
        for k in range(d + 1, d + 5):
            for fid in applicable_ids(k, d):
                for n in range(min_n(fid, k, d), max_n + 1):
                    yield fid, n, k, d


def negative_certificates(log: CertificateLog, max_n: int = 9) -> None:
    """Deliberately produce false verdicts on constructed families."""
    for fid, n, k, d in depth_grid(max_n):
        fam = construct(fid, n, k, d)
        log.add(is_d_wise_intersecting(fam, d + 1), fam)
        log.add(is_t_intersecting(fam, d), fam)
        smaller = fam.with_members(fam.members[1:])
        log.add(is_maximal(smaller, d), smaller)


def check_properties(log: CertificateLog | None = None, seed: int = 0) -> CheckResult:
    start = time.perf_counter()
    log = log if log is not None else CertificateLog()
    rng = random.Random(seed)
    failures = []
    values = {}
    # binomial recurrence
    bad = 0
    for _ in range(1000):
        n = rng.randint(1, 60)
        i = rng.randint(0, n)
        j = rng.randint(1, 60)
        if not verify_pascal_identity(n, i, j):
            bad += 1
            failures.append({"pascal": (n, i, j)})
    values["pascal_triples"] = 1000
    # sunflowers in 9-edge graphs
    for trial in range(100):
        g = random_graph(rng, rng.randint(6, 12), 9)
        found = find_sunflower(g, 3)
        if found is None or not is_delta_system(found[1], found[0]) or not all(x in g for x in found[1]):
            failures.append({"sunflower": g.as_lists()})
    values["sunflower_families"] = 100
    # intersection depth
    fams = 0
    for fid, n, k, d in depth_grid():
        fam = construct(fid, n, k, d)
        fams += 1
        for m in range(2, d + 1):
            if len(fam) >= m and min_intersection_size(fam, m) < d - m + 1:
                failures.append({"depth": fid.label(), "n": n, "k": k, "d": d, "m": m})
    values["depth_families"] = fams
    # certificate soundness
    negative_certificates(log)
    negs = log.negatives()
    for cert, fam in negs:
        if not recheck(cert, fam):
            failures.append({"certificate": cert.to_json()})
    values["negative_certificates"] = len(negs)
    return _result(8, "property suites", failures, values, start)


# ---------------------------------------------------------------------------

CHECKS = {
    1: check_formulas,
    2: check_anchors,
    3: check_maximality,
    4: check_g_vs_h3,
    5: check_kernel_bound,
    6: check_orderings,
    7: check_oracle,
}
TITLES = {
    1: "formula-construction agreement",
    2: "concrete size anchors",
    3: "maximality above n = kd",
    4: "G(4,3) isomorphic to H(4,3,3)",
    5: "kernel degree bound k-d+2",
    6: "ordering inequalities",
    7: "oracle base cases",
    8: "property suites",
}
FULL_ONLY = (3, 7)


def run_suite(profile: str = "quick", seed: int = 0, threads: int = 1) -> SuiteReport:
    """Run every check; ``quick`` skips the maximality scans and the oracle."""
    if profile not in ("quick", "full"):
        raise ValueError(f"unknown profile {profile!r}")
    log = CertificateLog()
    ids = [i for i in CHECKS if profile == "full" or i not in FULL_ONLY]

    def run(i: int) -> CheckResult:
        try:
            return CHECKS[i](log)
        except Exception as exc:  # a crashing check is a failed check
            return CheckResult(i, TITLES[i], FAIL, reason=f"{type(exc).__name__}: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            done = dict(zip(ids, pool.map(run, ids)))
    else:
        done = {i: run(i) for i in ids}
    try:
        done[8] = check_properties(log, seed)
    except Exception as exc:
        done[8] = CheckResult(8, TITLES[8], FAIL, reason=f"{type(exc).__name__}: {exc}")
    entries = []
    for i in sorted(TITLES):
        if i in done:
            entries.append(done[i])
        else:
            entries.append(CheckResult(i, TITLES[i], SKIP, reason="full profile only"))
    return SuiteReport(profile, entries)
