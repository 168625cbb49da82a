"""Command-line surface.

Every subcommand emits a stream of flat records, in one of three encodings:
human-readable lines (default), JSON (one object per line), or CSV (header
row first). Integers are always exact decimal strings; reals are decimal
strings with --digits significant digits. Numeric fields are computed by a
fixed-order reduction, so records are byte-identical for any --threads value.

Exit codes: 0 success, 1 verification/certification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from mpmath import mp, mpf, workprec

from . import asymptotics, engine, series
from .numerics import required_precision


def _fmt_real(x, digits: int) -> str:
    with workprec(max(64, int(digits * 3.33) + 16)):
        if hasattr(x, "as_mantissa_exp"):
            m, e = x.as_mantissa_exp()
            x = mpf(int(m)) * mpf(2) ** int(e)
        return mp.nstr(mpf(x), digits, strip_zeros=False)


def _emit(records, mode: str, stream) -> None:
    if mode == "json":
        for rec in records:
            stream.write(json.dumps(rec) + "\n")
    elif mode == "csv":
        if not records:
            return
        writer = csv.DictWriter(stream, fieldnames=list(records[0].keys()))
        writer.writeheader()
        for rec in records:
            writer.writerow(rec)
    else:
        for rec in records:
            stream.write("  ".join("%s=%s" % kv for kv in rec.items()) + "\n")


def _record(command: str, inputs: dict, results: dict, diagnostics: dict,
            timing: float) -> dict:
    rec = {"command": command}
    rec.update(inputs)
    rec.update(results)
    rec.update(diagnostics)
    rec["timing"] = "%.3f" % timing
    return rec


def _report_diagnostics(rep, digits: int) -> dict:
    return {
        "K_used": str(rep.K_used),
        "precision_used": str(rep.precision_used),
        "distance_to_integer": _fmt_real(rep.distance_to_integer, digits),
    }


# --- per-n workers (top level so they survive pickling) ----------------------

def _certify_fields(n: int, target: str):
    rep = engine.adaptive_certify(n, target)
    return (n, rep.rounded, rep.distance_to_integer, rep.imag_magnitude,
            rep.K_used, rep.precision_used)


def _verify_worker(args):
    n, target = args
    return _certify_fields(n, target)


_SCAN_TABLE = None


def _conjecture_worker(n: int):
    rep = asymptotics.conjecture_residual_scan([n], _SCAN_TABLE)[0]
    return (n, rep.exact_log._mpf_, rep.predicted._mpf_, rep.residual._mpf_)


def _map_ordered(worker, items, threads: int):
    if threads <= 1:
        return [worker(it) for it in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, items, chunksize=4))


# --- subcommands -------------------------------------------------------------

def _cmd_value(args, target: str) -> int:
    n = args.n
    kind = "cubic" if target == "cubic" else "ordinary"
    oracle_fn = (lambda: series.cubic_value(n)) if target == "cubic" \
        else (lambda: series.p_table(n)[n])
    records = []
    status = 0
    t0 = time.perf_counter()
    if args.oracle:
        value = oracle_fn()
        records.append(_record(target, {"n": str(n)},
                               {"value": str(value), "method": "oracle"},
                               {}, time.perf_counter() - t0))
    else:
        rep = engine.adaptive_certify(n, kind)
        results = {"value": str(rep.rounded), "method": "exact_formula"}
        if args.compare:
            oracle = oracle_fn()
            results["oracle"] = str(oracle)
            results["match"] = str(rep.rounded == oracle)
            if rep.rounded != oracle:
                status = 1
        records.append(_record(target, {"n": str(n)}, results,
                               _report_diagnostics(rep, args.digits),
                               time.perf_counter() - t0))
    _emit(records, args.format, sys.stdout)
    return status


def _cmd_table(args) -> int:
    t0 = time.perf_counter()
    table = series.cubic_table(args.to) if args.kind == "cubic" \
        else series.p_table(args.to)
    dt = time.perf_counter() - t0
    records = [_record("table", {"kind": args.kind, "n": str(n)},
                       {"value": str(table[n])}, {}, dt)
               for n in range(args.to + 1)]
    _emit(records, args.format, sys.stdout)
    return 0


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    kind = "cubic" if args.kind == "cubic" else "ordinary"
    lo = 0 if kind == "cubic" else 1
    oracle = series.cubic_table(args.to) if kind == "cubic" \
        else series.p_table(args.to)
    rows = _map_ordered(_verify_worker,
                        [(n, kind) for n in range(lo, args.to + 1)],
                        args.threads)
    dt = time.perf_counter() - t0
    records = []
    status = 0
    for n, rounded, dist, imag, K, bits in rows:
        ok = rounded == oracle[n]
        if not ok:
            status = 1
        records.append(_record(
            "verify", {"kind": args.kind, "n": str(n)},
            {"value": str(rounded), "oracle": str(oracle[n]), "match": str(ok)},
            {"K_used": str(K), "precision_used": str(bits),
             "distance_to_integer": _fmt_real(dist, args.digits),
             "imag_magnitude": _fmt_real(imag, args.digits)}, dt))
    _emit(records, args.format, sys.stdout)
    return status


def _cmd_congruence(args) -> int:
    t0 = time.perf_counter()
    table = series.cubic_table(args.to) if args.kind == "cubic" \
        else series.p_table(args.to)
    report = series.check_congruence(table, args.step, args.offset, args.mod)
    rec = _record(
        "congruence",
        {"kind": args.kind, "step": str(args.step), "offset": str(args.offset),
         "mod": str(args.mod), "to": str(args.to)},
        {"checked": str(report.checked_count), "ok": str(report.ok),
         "first_failure": "" if report.ok else str(report.first_failure)},
        {}, time.perf_counter() - t0)
    _emit([rec], args.format, sys.stdout)
    return 0 if report.ok else 1


def _cmd_convergence(args) -> int:
    t0 = time.perf_counter()
    prec = required_precision(args.n, args.terms)
    rep = engine.eval_cubic(args.n, prec)
    final = rep.final_value.real
    dt = time.perf_counter() - t0
    blank = {"K_used": "", "precision_used": "", "distance_to_integer": ""}
    records = []
    for i, partial in enumerate(rep.partial_sums, start=1):
        records.append(_record(
            "convergence", {"n": str(args.n), "index": str(i)},
            {"partial": _fmt_real(partial.real, args.digits),
             "remaining": _fmt_real(abs(final - partial.real), args.digits)},
            blank, dt))
    records.append(_record(
        "convergence", {"n": str(args.n), "index": "final"},
        {"partial": _fmt_real(final, args.digits), "remaining": "0"},
        _report_diagnostics(rep, args.digits), dt))
    _emit(records, args.format, sys.stdout)
    return 0


def _cmd_conjecture(args) -> int:
    global _SCAN_TABLE
    try:
        grid = sorted({int(s) for s in args.grid.split(",") if s.strip()})
    except ValueError:
        print("invalid --grid; expected comma-separated integers",
              file=sys.stderr)
        return 2
    if not grid or grid[0] < 100:
        print("grid entries must be integers >= 100", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    _SCAN_TABLE = series.p_table(max(grid))
    rows = _map_ordered(_conjecture_worker, grid, args.threads)
    dt = time.perf_counter() - t0
    records = []
    reports = []
    with workprec(max(128, int(args.digits * 3.33) + 64)):
        for n, exact, pred, resid in rows:
            exact, pred, resid = mpf(exact), mpf(pred), mpf(resid)
            reports.append(asymptotics.AsymptoticReport(n, exact, pred,
                                                        resid, 1))
            records.append(_record(
                "conjecture", {"n": str(n)},
                {"exact_log": _fmt_real(exact, args.digits),
                 "predicted": _fmt_real(pred, args.digits),
                 "residual": _fmt_real(resid, args.digits),
                 "scaled_residual": _fmt_real(n * resid, args.digits),
                 "error_bar": ""},
                {}, dt))
    if len(reports) >= 2:
        est, bar = asymptotics.extrapolate_c2(reports)
        records.append(_record(
            "conjecture", {"n": "extrapolated"},
            {"exact_log": "", "predicted": "", "residual": "",
             "scaled_residual": _fmt_real(est, args.digits),
             "error_bar": _fmt_real(bar, args.digits)},
            {}, dt))
    _emit(records, args.format, sys.stdout)
    return 0


# --- argument parsing --------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=15,
                        help="significant digits for real-valued fields")
    common.add_argument("--json", action="store_true", help="JSON lines output")
    common.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for sweep commands")

    parser = argparse.ArgumentParser(
        prog="cubicpart",
        description="Exact evaluation of the cubic partition function and "
                    "the classical partition function, with certificates.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name in ("cubic", "partition"):
        p = sub.add_parser(name, parents=[common],
                           help="certified %s value" % name)
        p.add_argument("n", type=int)
        p.add_argument("--oracle", action="store_true",
                       help="use the integer series oracle instead")
        p.add_argument("--compare", action="store_true",
                       help="run both paths and check equality")

    p = sub.add_parser("table", parents=[common], help="oracle table dump")
    p.add_argument("--kind", choices=("cubic", "ordinary"), required=True)
    p.add_argument("--to", type=int, required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="exact-formula vs oracle sweep")
    p.add_argument("--kind", choices=("cubic", "ordinary"), default="cubic")
    p.add_argument("--to", type=int, required=True)

    p = sub.add_parser("congruence", parents=[common],
                       help="arithmetic-progression divisibility scan")
    p.add_argument("--kind", choices=("cubic", "ordinary"), required=True)
    p.add_argument("--step", type=int, required=True)
    p.add_argument("--offset", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--to", type=int, required=True)

    p = sub.add_parser("convergence", parents=[common],
                       help="per-term partial sums of the exact series")
    p.add_argument("n", type=int)
    p.add_argument("--terms", type=int, required=True)

    p = sub.add_parser("conjecture", parents=[common],
                       help="log-expansion residual scan")
    p.add_argument("--grid", required=True,
                   help="comma-separated ascending n values (>= 100)")
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.json and args.csv:
        parser.error("--json and --csv are mutually exclusive")
    args.format = "json" if args.json else ("csv" if args.csv else "human")
    if args.digits < 1 or args.threads < 1:
        parser.error("--digits and --threads must be positive")
    try:
        if args.subcommand == "cubic":
            return _cmd_value(args, "cubic")
        if args.subcommand == "partition":
            return _cmd_value(args, "partition")
        if args.subcommand == "table":
            return _cmd_table(args)
        if args.subcommand == "verify":
            return _cmd_verify(args)
        if args.subcommand == "congruence":
            return _cmd_congruence(args)
        if args.subcommand == "convergence":
            return _cmd_convergence(args)
        if args.subcommand == "conjecture":
            return _cmd_conjecture(args)
    except engine.LadderExhausted as exc:
        rep = exc.report
        _emit([_record(args.subcommand, {"n": str(rep.n)},
                       {"error": "uncertified"},
                       _report_diagnostics(rep, args.digits), 0.0)],
              args.format, sys.stdout)
        return 1
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
