"""Command line front end.

Exit codes: 0 ok, 1 a check failed, 2 invalid input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from pathlib import Path

from . import delta, iso, oracle, rank, suite
from .constructors import FamilyId, construct, formula_size
from .setcore import (
    DEFAULT_CLOSURE_CAP,
    ParameterError,
    Params,
    ResourceCapError,
    build_closure,
    dump_family,
    elements_of,
    load_family,
    mask_of,
    verify_pascal_identity,
)
from .verify import is_d_wise_intersecting, is_maximal, is_t_intersecting, is_trivial, maximal_closure

OK, FAILED, INVALID, CAPPED = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def _write_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _elements(text: str) -> int:
    try:
        return mask_of(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ParameterError(f"bad element list {text!r}") from exc


def _lists(masks) -> list[list[int]]:
    return [elements_of(m) for m in masks]


def _table(rows: list[list]) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    fam = construct(FamilyId.parse(args.family), args.n, args.k, args.d)
    if args.out:
        dump_family(fam, args.out)
    _emit(args, fam.to_json(), f"{args.family} at n={args.n}, k={args.k}, d={args.d}: {len(fam)} sets"
          + ("" if args.out else "\n" + "\n".join(" ".join(map(str, s)) for s in fam.as_lists())))
    return OK


def cmd_size(args) -> int:
    fid = FamilyId.parse(args.family)
    size = formula_size(fid, args.n, args.k, args.d)
    payload = {"family": fid.label(), "n": args.n, "k": args.k, "d": args.d, "size": size}
    if args.construct:
        payload["constructed"] = len(construct(fid, args.n, args.k, args.d))
    text = f"|{fid.label()}| = {size}"
    if args.construct:
        text += f" (construction: {payload['constructed']})"
    _emit(args, payload, text)
    if args.construct and payload["constructed"] != size:
        return FAILED
    return OK


def cmd_check(args) -> int:
    fam = load_family(args.input)
    if args.t is not None:
        cert = is_t_intersecting(fam, args.t)
    else:
        cert = is_d_wise_intersecting(fam, args.d, args.node_cap)
    payload = cert.to_json()
    payload["trivial"] = is_trivial(fam) if fam.members else None
    text = f"{cert.prop}: {cert.verdict}"
    if cert.witness:
        text += "  witness: " + " | ".join(" ".join(map(str, s)) for s in _lists(cert.witness))
    text += f"\ncommon element: {payload['trivial']}"
    _emit(args, payload, text)
    return OK if cert.verdict else FAILED


def cmd_maximal(args) -> int:
    fam = load_family(args.input)
    if args.close:
        closed = maximal_closure(fam, args.d)
        if args.out:
            dump_family(closed, args.out)
        _emit(args, closed.to_json(), f"closure has {len(closed)} sets (added {len(closed) - len(fam)})")
        return OK
    cert = is_maximal(fam, args.d)
    text = f"maximal: {cert.verdict}"
    if cert.witness:
        text += f"  addable: {' '.join(map(str, elements_of(cert.witness[0])))}"
    _emit(args, cert.to_json(), text)
    return OK if cert.verdict else FAILED


def cmd_closure(args) -> int:
    fam = load_family(args.input)
    if args.depth < 1:
        raise ParameterError("depth must be >= 1")
    cl = build_closure(fam, min(args.depth, len(fam)), args.node_cap)
    anti = cl.antichain() if fam.members else []
    payload = {"depth": args.depth, "antichain": _lists(anti)}
    _emit(args, payload, "\n".join(" ".join(map(str, s)) or "(empty)" for s in payload["antichain"]))
    return OK


def cmd_kernel(args) -> int:
    fam = load_family(args.input)
    rep = delta.kernel_degree(fam, _elements(args.X))
    payload = {"kernel": elements_of(rep.kernel), "degree": rep.degree, "witness": _lists(rep.witness)}
    _emit(args, payload, f"kernel degree {rep.degree}; witness: {payload['witness']}")
    return OK


def cmd_sunflower(args) -> int:
    fam = load_family(args.input)
    found = delta.find_sunflower(fam, args.s)
    if found is None:
        _emit(args, {"found": False}, f"no Delta-system of size {args.s}")
        return FAILED
    kernel, members = found
    payload = {"found": True, "kernel": elements_of(kernel), "members": _lists(members)}
    _emit(args, payload, f"kernel {payload['kernel']}: {payload['members']}")
    return OK


def cmd_bdecomp(args) -> int:
    fam = load_family(args.input)
    dec = delta.b_decomposition(fam, args.d)
    payload = dec.to_json()
    if args.out:
        _write_json(args.out, payload)
    _emit(args, payload, f"|B1|={len(dec.b1)} |B2|={len(dec.b2)} |B3|={len(dec.b3)}; levels "
          + ", ".join(f"{i}:{len(v)}" for i, v in sorted(dec.levels.items())))
    return OK


def cmd_iso(args) -> int:
    a, b = load_family(args.a), load_family(args.b)
    w = iso.are_isomorphic(a, b)
    if w is None:
        why = iso.distinguishing_invariant(a, b) or "canonical form"
        _emit(args, {"isomorphic": False, "invariant": why}, f"non-isomorphic: {why} differs")
        return FAILED
    payload = {"isomorphic": True, "witness": list(w.image)}
    _emit(args, payload, "isomorphic; witness " + " ".join(f"{i}->{j}" for i, j in enumerate(w.image, 1)))
    return OK


def cmd_enumerate(args) -> int:
    p = Params(args.n, args.k, args.d)
    if args.top is not None:
        res = oracle.top_m_maximal(p, args.top, args.node_cap, t=args.t)
    else:
        res = oracle.enumerate_maximal(p, args.min_size, args.node_cap, t=args.t, nontrivial=not args.allow_trivial)
    payload = res.to_json()
    if args.out:
        _write_json(args.out, payload)
    rows = [["class", "size", "copies"]] + [[i, c.size, c.multiplicity] for i, c in enumerate(res.classes, 1)]
    text = _table(rows) + f"\nexhausted: {res.exhausted}  nodes: {res.nodes}  time: {res.seconds:.2f}s"
    if res.note:
        text += f"\nnote: {res.note}"
    _emit(args, payload, text)
    return OK if res.exhausted else CAPPED


def cmd_rank(args) -> int:
    table = rank.rank_table(args.k, args.d, args.n)
    rows = table.csv_rows()
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    text = _table([["family", "size", "rank", "tie-group"]] + [[e.label, e.size, e.rank, e.tie_group] for e in table.entries])
    if table.invalid:
        text += "\nundefined: " + "; ".join(f"{k}: {v}" for k, v in table.invalid.items())
    _emit(args, table.to_json(), text)
    return OK


def cmd_verify_order(args) -> int:
    reports = rank.verify_orderings(args.k, args.d, args.n)
    payload = {"k": args.k, "d": args.d, "n": args.n, "clauses": [r.to_json() for r in reports]}
    if args.report:
        _write_json(args.report, payload)
    rows = [["clause", "statement", "applicable", "lhs", "rhs", "pass"]]
    for r in reports:
        rows.append([r.cid, r.statement, r.applicable, r.lhs, r.rhs, "-" if r.passed is None else r.passed])
    _emit(args, payload, _table(rows))
    return FAILED if any(r.passed is False for r in reports) else OK


def cmd_thresholds(args) -> int:
    rep = rank.thresholds(args.k, args.d)
    payload = rep.to_json()
    text = "\n".join([
        f"n0 = {rep.n0} (rounded up)",
        f"n1 = {rep.n1}",
        f"n2 = {rep.n2}",
        f"maximality bound kd = {rep.maximality_bound}",
    ] + [f"{cid}: n >= {v}" for cid, v in rep.clause_thresholds.items()])
    _emit(args, payload, text)
    return OK


def cmd_identity_check(args) -> int:
    if args.n is not None:
        if args.i is None or args.j is None:
            raise ParameterError("--n needs --i and --j")
        triples = [(args.n, args.i, args.j)]
    else:
        rng = random.Random(args.seed)
        triples = []
        for _ in range(args.count):
            n = rng.randint(1, args.max_n)
            triples.append((n, rng.randint(0, n), rng.randint(1, args.max_n)))
    bad = [t for t in triples if not verify_pascal_identity(*t)]
    payload = {"checked": len(triples), "failures": bad}
    _emit(args, payload, f"checked {len(triples)} triples, {len(bad)} failures")
    return FAILED if bad else OK


def cmd_suite(args) -> int:
    report = suite.run_suite(args.profile, seed=args.seed, threads=args.threads)
    payload = report.to_json()
    if args.out:
        _write_json(args.out, payload)
    _emit(args, payload, "\n".join(e.line() + f"  [{e.seconds:.1f}s]" for e in report.entries))
    return OK if report.ok else FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dwise", description="Verify and enumerate maximal non-trivial d-wise intersecting families.")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--node-cap", type=int, default=None)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="print JSON instead of text")

    # the global flags are also accepted after the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    shared.add_argument("--node-cap", type=int, default=argparse.SUPPRESS)
    shared.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    with_json = argparse.ArgumentParser(add_help=False, parents=[shared])
    with_json.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    sub = ap.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[shared if name == "verify-order" else with_json], **kw)

    sub.add_parser = add_parser

    def nkd(p, n=True):
        if n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("construct", help="build a named family")
    p.add_argument("--family", required=True, help="H2, H(3), G, S, S1, S2, S3, A, B, C")
    nkd(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("size", help="closed-form size of a named family")
    p.add_argument("--family", required=True)
    nkd(p)
    p.add_argument("--construct", action="store_true", help="also count an explicit construction")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("check", help="d-wise or t-intersection test with witness")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("maximal", help="maximality test, or greedy closure with --close")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--close", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_maximal)

    p = sub.add_parser("closure", help="minimal intersections of up to DEPTH members")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("kernel", help="kernel degree of a set")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--X", required=True, help="comma separated elements")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("sunflower", help="find a Delta-system of size s")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_sunflower)

    p = sub.add_parser("bdecomp", help="kernel decomposition B1/B2/B3")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bdecomp)

    p = sub.add_parser("iso", help="isomorphism test with witness")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("enumerate", help="all maximal families up to isomorphism")
    nkd(p)
    p.add_argument("--min-size", type=int, default=0)
    p.add_argument("--t", type=int, help="pairwise t-intersecting instead of d-wise")
    p.add_argument("--top", type=int, help="keep only the m largest classes")
    p.add_argument("--allow-trivial", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("rank", help="rank the extremal families by size")
    nkd(p)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("verify-order", help="check the ordering inequalities at (k,d,n)")
    nkd(p)
    p.add_argument("--json", dest="report", metavar="PATH", help="write the clause report here")
    p.set_defaults(func=cmd_verify_order)

    p = sub.add_parser("thresholds", help="n thresholds for (k,d)")
    nkd(p, n=False)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("identity-check", help="binomial recurrence on one or many triples")
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=60)
    p.set_defaults(func=cmd_identity_check)

    p = sub.add_parser("suite", help="run the acceptance checks")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--out")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.node_cap is None:
        args.node_cap = oracle.DEFAULT_NODE_CAP if args.command == "enumerate" else DEFAULT_CLOSURE_CAP
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return CAPPED
    except (ParameterError, ValueError, KeyError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
