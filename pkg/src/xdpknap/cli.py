"""Command-line entry point: ``xdpknap {solve,gen,bench,jooken}``.

Results go to stdout, diagnostics to stderr. Exit status is 0 on success,
1 on usage errors and 2 on data or solver errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
import warnings
from pathlib import Path

from . import kernels
from .core import Instance, InstanceError
from .greedy import greedy_plus
from .harness import SCALES, format_report, run_table
from .instgen import GenerationError, TrialConfig, generate
from .jooken_io import (
    MissingOptimumError,
    ParseError,
    evaluate_against_optimum,
    iter_instance_files,
    parse_instance_text,
    parse_jooken,
)
from .oracle import OracleLimitError, exact_solve
from .xdp import DEFAULT_G, xdp_solve

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common(top: bool) -> argparse.ArgumentParser:
    # Subcommand copies must not reset values given before the subcommand.
    dflt = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=dflt(None), help=f"master seed (default {DEFAULT_SEED})")
    common.add_argument("--quiet", action="store_true", default=dflt(False), help="suppress diagnostics on stderr")
    common.add_argument("--format", choices=("json", "csv"), default=dflt(None), help="stdout format")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xdpknap", description=__doc__.splitlines()[0], parents=[_common(True)])
    common = _common(False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("solve", parents=[common], help="solve one instance file")
    p.add_argument("--algo", choices=("xdp", "greedy", "exact"), default="xdp")
    p.add_argument("--g", type=float, default=DEFAULT_G, help="bin-count constant (T = g ln n)")
    p.add_argument("--emit-selection", action="store_true", help="include chosen item indices")
    p.add_argument("file", help="instance JSON, or a hard-instance *.in file")

    p = sub.add_parser("gen", parents=[common], help="generate a random trial instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fixed-k", type=int, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", parents=[common], help="reproduce one results table")
    p.add_argument("--table", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--trials", type=int, default=None, help="trials per cell (default: by scale)")
    p.add_argument("--scale", choices=tuple(SCALES), default="desk")
    p.add_argument("--g", type=float, default=DEFAULT_G)
    p.add_argument("--out", required=True)

    p = sub.add_parser("jooken", parents=[common], help="run XDP over a hard-instance directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--g", type=float, default=DEFAULT_G)
    p.add_argument("--report", required=True)
    return parser


def _emit(obj: dict, fmt: str, out) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(obj.keys())
        writer.writerow(json.dumps(v) if isinstance(v, list) else v for v in obj.values())
    else:
        out.write(json.dumps(obj) + "\n")


def _load(path: str) -> Instance:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if p.suffix == ".in":
        return parse_instance_text(text, p)
    return Instance.from_json(text)


def cmd_solve(args, out, log) -> None:
    inst = _load(args.file)
    t0 = time.perf_counter()
    if args.algo == "xdp":
        sol = xdp_solve(inst, g=args.g)
        sel, e, pmax, bins = sol.selection, sol.e, sol.pmax, sol.T
    elif args.algo == "greedy":
        rep = greedy_plus(inst)
        sel, e, pmax, bins = rep.selection, rep.e, rep.pmax, None
    else:
        res = exact_solve(inst)
        rep = greedy_plus(inst)
        sel, pmax, bins = res.selection, rep.pmax, None
        e = (pmax - res.optimum) / pmax if pmax > 0 else 0.0
    elapsed = time.perf_counter() - t0
    result = {
        "algo": args.algo,
        "n": inst.n,
        "profit": sel.profit_sum,
        "weight": sel.weight_sum,
        "e": e,
        "pmax": pmax,
        "bins": bins,
        "k": sel.k,
    }
    if args.emit_selection:
        result["selection"] = list(sel.chosen)
    result["runtime_seconds"] = elapsed
    _emit(result, args.format, out)
    log(f"{args.algo}: n={inst.n} profit={sel.profit_sum:.12g} e={e:.3e} in {elapsed:.3g}s [{kernels.BACKEND}]")


def cmd_gen(args, out, log) -> None:
    try:
        inst = generate(TrialConfig(args.n, args.seed, args.fixed_k))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    inst.save(args.out)
    _emit({"out": args.out, "n": inst.n, "capacity": inst.capacity, "seed": args.seed}, args.format, out)
    log(f"wrote {args.out}")


def cmd_bench(args, out, log) -> None:
    log(f"table {args.table}, scale {args.scale}, seed {args.seed} [{kernels.BACKEND}]")
    stats = run_table(args.table, args.scale, args.seed, args.trials, args.g)
    report = format_report(stats, "csv")
    Path(args.out).write_text(report)
    out.write(report if args.format == "csv" else format_report(stats, "json"))
    log(f"wrote {args.out}")


JOOKEN_COLUMNS = (
    "path", "n", "capacity", "recorded_optimum", "profit", "error", "e", "pmax", "pmax_ok",
    "k_xdp", "k_greedy", "k_recorded", "runtime_seconds",
)


def cmd_jooken(args, out, log) -> None:
    root = Path(args.dir)
    if not root.is_dir():
        raise DataError(f"{root} is not a directory")
    files = list(iter_instance_files(root))
    if args.limit is not None:
        files = files[: args.limit]
    if not files:
        raise DataError(f"no *.in instance files under {root}")
    rows = []
    for path in files:
        try:
            hi = parse_jooken(path)
        except MissingOptimumError as exc:
            log(f"skipping: {exc}")
            continue
        t0 = time.perf_counter()
        sol = xdp_solve(hi.instance, g=args.g)
        elapsed = time.perf_counter() - t0
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            err = evaluate_against_optimum(hi, sol.S)
        for w in caught:
            log(f"warning: {w.message}")
        rows.append({
            "path": str(path.relative_to(root)),
            "n": hi.instance.n,
            "capacity": hi.instance.capacity,
            "recorded_optimum": hi.recorded_optimum,
            "profit": sol.S,
            "error": err,
            "e": sol.e,
            "pmax": sol.pmax,
            "pmax_ok": int(hi.recorded_optimum <= sol.pmax * (1 + 1e-12)),
            "k_xdp": sol.selection.k,
            "k_greedy": sol.greedy.k,
            "k_recorded": hi.recorded_k,
            "runtime_seconds": elapsed,
        })
    m = len(rows)
    if not m:
        raise DataError(f"no instance under {root} has a recorded optimum")
    summary = {
        "path": "SUMMARY",
        "n": math.fsum(r["n"] for r in rows) / m,
        "error": math.fsum(r["error"] for r in rows) / m,
        "e": math.fsum(r["e"] for r in rows) / m,
        "pmax_ok": sum(r["pmax_ok"] for r in rows),
        "k_xdp": math.fsum(r["k_xdp"] for r in rows) / m,
        "k_greedy": math.fsum(r["k_greedy"] for r in rows) / m,
        "runtime_seconds": math.fsum(r["runtime_seconds"] for r in rows) / m,
    }
    buf = io.StringIO()
    writer = csv.DictWriter(buf, JOOKEN_COLUMNS, lineterminator="\n", restval="")
    writer.writeheader()
    writer.writerows(rows)
    writer.writerow(summary)
    Path(args.report).write_text(buf.getvalue())
    _emit({"files": m, **{k: v for k, v in summary.items() if k != "path"}}, args.format, out)
    log(f"{m} files, mean error {summary['error']:.3e}, wrote {args.report}")


COMMANDS = {"solve": cmd_solve, "gen": cmd_gen, "bench": cmd_bench, "jooken": cmd_jooken}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=err)
        return 1
    if args.seed is None:
        args.seed = DEFAULT_SEED
    if args.format is None:
        args.format = "csv" if args.command == "bench" else "json"

    def log(msg):
        if not args.quiet:
            print(msg, file=err)

    try:
        COMMANDS[args.command](args, out, log)
    except UsageError as exc:
        print(f"xdpknap {args.command}: error: {exc}", file=err)
        return 1
    except (DataError, InstanceError, ParseError, OracleLimitError, GenerationError, OSError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        out.write(json.dumps(payload) + "\n")
        print(f"xdpknap {args.command}: {exc}", file=err)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
