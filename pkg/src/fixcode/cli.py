"""Command-line driver: one subcommand per verifiable claim.

Exit codes: 0 when the claim verifies, 1 when it is refuted or a requested
property fails, 2 for usage, validation, or resource-cap problems.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .classical import extended_qr, reed_muller
from .codes import LinearCode, extremal_bound, load_code
from .errors import PreconditionError, ResourceCapError
from .fixengine import (
    VerificationReport,
    build_c_code,
    compute_fix_span,
    fix_span_code,
    invariance_spot_check,
    verify_lemma,
    verify_remark_case,
)
from .gf2 import nullspace_basis
from .groups import AffineGroupSpec, DEFAULT_SCAN_CAP_BITS


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", metavar="PATH", help="write the verification report as JSON")
    parser.add_argument("--plot", metavar="PATH", help="render the report's distribution data to a figure file")
    parser.add_argument("--workers", type=int, default=1, metavar="N", help="parallel workers for scans (results are worker-count independent)")
    parser.add_argument("--scan-cap", type=int, default=DEFAULT_SCAN_CAP_BITS, metavar="BITS", help="largest allowed matrix-scan budget, as log2 of the candidate count")
    parser.add_argument("--seed", type=int, default=0, metavar="N", help="seed for randomized spot checks")
    parser.add_argument("--bz-cap", type=int, default=16, metavar="W", help="information-weight ceiling for the information-set minimum-weight search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fixcode",
        description="Verify structural claims about binary codes invariant under "
        "the affine groups T : SL(m, 2^r), and about the classical reference codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lemma", help="non-existence of an invariant self-dual code of length 2^(2rs)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("remark", help="fixed-set cardinality versus the extremality bound")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--family", choices=("even", "odd"), required=True)
    _add_common(p)

    p = sub.add_parser("cgo", help="build C(G, Omega) for G = T : SL(m, 2^r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dual", action="store_true", help="emit the dual (the fixed-set span) instead")
    p.add_argument("--min-weight", choices=("auto", "exhaustive", "bz"), default=None)
    p.add_argument("--save", metavar="FILE", help="write the code in fixcode-v1 format")
    _add_common(p)

    p = sub.add_parser("qr", help="extended quadratic residue code checks")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--check-min-weight", action="store_true")
    _add_common(p)

    p = sub.add_parser("rm", help="Reed-Muller code checks")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--save", metavar="FILE")
    p.add_argument("--check", default="", metavar="LIST", help="comma list: self-dual,doubly-even,min-weight,extremal")
    _add_common(p)

    p = sub.add_parser("check", help="verify properties of a code file")
    p.add_argument("--code", required=True, metavar="FILE")
    p.add_argument("--self-dual", action="store_true")
    p.add_argument("--doubly-even", action="store_true")
    p.add_argument("--min-weight", action="store_true")
    p.add_argument("--extremal", action="store_true")
    _add_common(p)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "lemma": _run_lemma,
        "remark": _run_remark,
        "cgo": _run_cgo,
        "qr": _run_qr,
        "rm": _run_rm,
        "check": _run_check,
    }[args.command]
    try:
        report = handler(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 2
    except (ValueError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args)
    return 0 if report.conclusion == "verified" else 1


def _emit(report: VerificationReport, args) -> None:
    print(f"claim: {report.claim}  params: {report.params}")
    if report.group:
        print(
            f"group: |I(H)|={report.group['involutions_H']} "
            f"|I(G)|={report.group['involutions_G']} "
            f"distinct fix sets={report.group['distinct_fix_sets']}"
        )
    if report.code:
        c = report.code
        extra = "".join(
            f" {key}={c[key]}" for key in ("min_weight", "self_dual", "doubly_even", "extremal") if c[key] is not None
        )
        print(f"code: [{c['n']}, {c['k']}]{extra}")
    for name, ok in report.details.get("checks", {}).items():
        print(f"  check {name}: {'ok' if ok else 'FAILED'}")
    if "statement" in report.details:
        print(f"  established: {report.details['statement']}")
    print(f"conclusion: {report.conclusion}  ({report.elapsed_ms} ms)")
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_json_dict(), indent=2) + "\n")
        print(f"report written to {args.json}")
    if args.plot:
        from .plots import render_report_figure

        if render_report_figure(report, args.plot):
            print(f"figure written to {args.plot}")
        else:
            print("no distribution data to plot for this run")


def _run_lemma(args) -> VerificationReport:
    return verify_lemma(args.r, args.s, scan_cap_bits=args.scan_cap, workers=args.workers)


def _run_remark(args) -> VerificationReport:
    return verify_remark_case(
        args.r, args.s, args.family, scan_cap_bits=args.scan_cap, workers=args.workers
    )


def _run_cgo(args) -> VerificationReport:
    t0 = time.perf_counter()
    spec = AffineGroupSpec(args.r, args.m)
    fs = compute_fix_span(spec, scan_cap_bits=args.scan_cap, workers=args.workers)
    code = LinearCode(spec.n, fs.span) if args.dual else LinearCode(spec.n, nullspace_basis(fs.span))
    checks = {
        "span_dual_roundtrip": code.k + (fs.span.n_rows if not args.dual else spec.n - fs.span.n_rows) == spec.n,
        "invariant_under_sampled_elements": invariance_spot_check(code, spec, seed=args.seed),
    }
    details: dict = {
        "checks": checks,
        "dim_fix_span": fs.span.n_rows,
        "min_fixed_dim": min(fs.fixed_dims) if fs.fixed_dims else None,
        "fixed_dim_histogram": {},
        "dual": bool(args.dual),
    }
    for d in sorted(fs.fixed_dims):
        details["fixed_dim_histogram"][str(d)] = details["fixed_dim_histogram"].get(str(d), 0) + 1
    code_stats = {
        "n": code.n,
        "k": code.k,
        "min_weight": None,
        "self_dual": code.is_self_dual(),
        "doubly_even": code.is_doubly_even(),
        "extremal": None,
    }
    if args.min_weight:
        d = _min_weight_with_distribution(code, args.min_weight, details, bz_cap=args.bz_cap)
        code_stats["min_weight"] = d
        if code_stats["self_dual"] and code_stats["doubly_even"]:
            code_stats["extremal"] = d == extremal_bound(code.n)
    if args.save:
        code.save(args.save)
        details["saved_to"] = args.save
    report = VerificationReport(
        claim="cgo",
        params={"r": args.r, "m": args.m, "n": spec.n},
        group={
            "involutions_H": len(fs.involutions_H),
            "involutions_G": fs.involutions_G,
            "distinct_fix_sets": fs.distinct_fix_sets,
        },
        code=code_stats,
        conclusion="verified" if all(checks.values()) else "refuted",
        details=details,
    )
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def _min_weight_with_distribution(code: LinearCode, method: str, details: dict, bz_cap: int) -> int:
    """Minimum weight; records the full weight distribution when the
    exhaustive path runs (it comes at the same cost there)."""
    if method == "auto":
        method = "exhaustive" if code.k <= 26 else "bz"
    if method == "exhaustive":
        enum = code.weight_enumerator()
        details["weight_distribution"] = list(enum.counts)
        return enum.min_weight()
    return code.min_weight("bz", bz_weight_cap=bz_cap)


def _run_qr(args) -> VerificationReport:
    t0 = time.perf_counter()
    code = extended_qr(args.p)
    checks = {"self_dual": code.is_self_dual(), "doubly_even": code.is_doubly_even()}
    details: dict = {"checks": checks}
    code_stats = {
        "n": code.n,
        "k": code.k,
        "min_weight": None,
        "self_dual": checks["self_dual"],
        "doubly_even": checks["doubly_even"],
        "extremal": None,
    }
    if args.check_min_weight:
        d = _min_weight_with_distribution(code, "auto", details, bz_cap=args.bz_cap)
        code_stats["min_weight"] = d
        code_stats["extremal"] = d == extremal_bound(code.n)
        checks["extremal"] = code_stats["extremal"]
    report = VerificationReport(
        claim="qr",
        params={"p": args.p, "n": code.n},
        code=code_stats,
        conclusion="verified" if all(checks.values()) else "refuted",
        details=details,
    )
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def _run_rm(args) -> VerificationReport:
    t0 = time.perf_counter()
    code = reed_muller(args.order, args.vars)
    requested = [item for item in args.check.split(",") if item]
    valid = {"self-dual", "doubly-even", "min-weight", "extremal"}
    unknown = set(requested) - valid
    if unknown:
        raise ValueError(f"unknown --check items: {sorted(unknown)}; valid: {sorted(valid)}")
    checks: dict[str, bool] = {}
    details: dict = {"checks": checks}
    code_stats = {
        "n": code.n,
        "k": code.k,
        "min_weight": None,
        "self_dual": code.is_self_dual(),
        "doubly_even": code.is_doubly_even(),
        "extremal": None,
    }
    if "self-dual" in requested:
        checks["self_dual"] = code_stats["self_dual"]
    if "doubly-even" in requested:
        checks["doubly_even"] = code_stats["doubly_even"]
    if "min-weight" in requested or "extremal" in requested:
        d = _min_weight_with_distribution(code, "auto", details, bz_cap=args.bz_cap)
        code_stats["min_weight"] = d
        if "min-weight" in requested:
            checks["min_weight_is_2^(m-order)"] = d == 1 << (args.vars - args.order)
        if "extremal" in requested:
            code_stats["extremal"] = d == extremal_bound(code.n)
            checks["extremal"] = code_stats["extremal"]
    if args.save:
        code.save(args.save)
        details["saved_to"] = args.save
    report = VerificationReport(
        claim="rm",
        params={"order": args.order, "vars": args.vars, "n": code.n},
        code=code_stats,
        conclusion="verified" if all(checks.values()) else "refuted",
        details=details,
    )
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def _run_check(args) -> VerificationReport:
    t0 = time.perf_counter()
    code = load_code(args.code)
    checks: dict[str, bool] = {}
    details: dict = {"checks": checks, "file": args.code}
    code_stats = {
        "n": code.n,
        "k": code.k,
        "min_weight": None,
        "self_dual": code.is_self_dual(),
        "doubly_even": code.is_doubly_even(),
        "extremal": None,
    }
    if args.self_dual:
        checks["self_dual"] = code_stats["self_dual"]
    if args.doubly_even:
        checks["doubly_even"] = code_stats["doubly_even"]
    if args.min_weight or args.extremal:
        d = _min_weight_with_distribution(code, "auto", details, bz_cap=args.bz_cap)
        code_stats["min_weight"] = d
        if args.min_weight:
            checks["min_weight_computed"] = True
        if args.extremal:
            if not (code_stats["self_dual"] and code_stats["doubly_even"]):
                raise PreconditionError(
                    "extremality is defined only for doubly even self-dual codes"
                )
            code_stats["extremal"] = d == extremal_bound(code.n)
            checks["extremal"] = code_stats["extremal"]
    report = VerificationReport(
        claim="check",
        params={"file": str(args.code)},
        code=code_stats,
        conclusion="verified" if all(checks.values()) else "refuted",
        details=details,
    )
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


if __name__ == "__main__":
    raise SystemExit(main())
