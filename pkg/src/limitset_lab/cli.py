"""The limitset-lab command line.

    limitset-lab space check --props hausdorff,regular --in space.json
    limitset-lab net analyze --in net.json --horizon 64 --out analysis.json
    limitset-lab omega --map logistic --param 2.0 --cells 64 --init all --out trace.csv
    limitset-lab verify --suite all --budget 1000 --seed 42 --out report.json

Structures travel as JSON, traces as CSV; ``--out -`` streams to stdout.
Exit codes: 0 success, 1 verification violations, 2 input errors.
Identical argv and inputs produce byte-identical outputs; the
LIMITSET_THREADS variable caps internal parallelism (the current
implementation evaluates sequentially, within any cap).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import jsonio, theoremlab
from .errors import LimitsetError, MalformedInputError
from .finite_topology import (is_hausdorff, is_pseudometrizable, is_regular)
from .semiflow_cells import (CellGrid, DiscreteSemiflow,
                             attraction_trace_check, cell_image,
                             omega_limit_cells)
from .subset_nets import analyze

PROP_CHECKS = {
    "hausdorff": is_hausdorff,
    "regular": is_regular,
    "pseudometrizable": is_pseudometrizable,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="limitset-lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("space", help="finite-space property checks")
    p.add_argument("action", choices=["check"])
    p.add_argument("--props", default="hausdorff,regular,pseudometrizable")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default="-")

    p = sub.add_parser("net", help="net analysis")
    p.add_argument("action", choices=["analyze"])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--horizon", type=int, default=64)
    p.add_argument("--out", default="-")

    p = sub.add_parser("omega", help="omega limit sets on a cell grid")
    p.add_argument("--map", dest="map_kind", required=True,
                   choices=["logistic", "tent", "rotation", "henon", "table"])
    p.add_argument("--param", default=None)
    p.add_argument("--param2", default=None)
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--init", default="all")
    p.add_argument("--in", dest="infile", default=None,
                   help="cell table JSON for --map table")
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--dilate", action="store_true")
    p.add_argument("--out", default="-")

    p = sub.add_parser("verify", help="run the theorem verification suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="-")
    return parser


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _read_json(path: str):
    with open(path) as f:
        return json.load(f)


def _threads_cap() -> int:
    raw = os.environ.get("LIMITSET_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise MalformedInputError(f"LIMITSET_THREADS must be an integer: {raw!r}")
    if cap < 1:
        raise MalformedInputError("LIMITSET_THREADS must be at least 1")
    return cap


def cmd_space(args) -> int:
    space = jsonio.finite_space_from_json(_read_json(args.infile))
    out = {}
    for prop in args.props.split(","):
        prop = prop.strip()
        if prop not in PROP_CHECKS:
            raise MalformedInputError(f"unknown property: {prop!r}")
        out[prop] = PROP_CHECKS[prop](space)
    _write(args.out, jsonio.dumps_canonical(out))
    return 0


def cmd_net(args) -> int:
    if args.horizon < 1:
        raise MalformedInputError("--horizon must be positive")
    net = jsonio.net_from_json(_read_json(args.infile))
    analysis = analyze(net)
    out = jsonio.analysis_to_json(net.ground, analysis)
    out["horizon"] = args.horizon
    _write(args.out, jsonio.dumps_canonical(out))
    return 0


def _parse_init(raw: str, grid: CellGrid) -> int:
    if raw == "all":
        return grid.full_mask
    if raw.startswith("cell:") or raw.startswith("cells:"):
        body = raw.split(":", 1)[1]
        mask = 0
        for part in body.split(","):
            i = int(part)
            if not 0 <= i < grid.total:
                raise MalformedInputError(f"cell {i} outside the grid")
            mask |= 1 << i
        return mask
    raise MalformedInputError(f"bad --init: {raw!r} (use all or cell:K)")


def cmd_omega(args) -> int:
    if args.samples < 1:
        raise MalformedInputError("--samples must be at least 1")
    if args.map_kind == "table":
        if args.infile is None:
            raise MalformedInputError("--map table needs --in table.json")
        rows = _read_json(args.infile)
        if not isinstance(rows, list):
            raise MalformedInputError("cell table must be a list of cell lists")
        table = tuple(sum(1 << c for c in row) for row in rows)
        flow = DiscreteSemiflow("table", table=table)
        grid = CellGrid(1, args.cells)
        if len(table) != grid.total:
            raise MalformedInputError("table size must match the grid")
    else:
        params = []
        if args.param is not None:
            params.append(Fraction(args.param))
        if args.param2 is not None:
            params.append(Fraction(args.param2))
        flow = DiscreteSemiflow(args.map_kind, tuple(params))
        grid = CellGrid(flow.dim, args.cells)
    init = _parse_init(args.init, grid)
    result = omega_limit_cells(grid, flow, init,
                               samples=args.samples, dilate=args.dilate)

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "cells", "distance"])
    state = init
    for n, d in result.trace:
        count = bin(state).count("1")
        writer.writerow([n, count, "inf" if d.is_infinite else float(d.value)])
        state = cell_image(grid, flow, state,
                           samples=args.samples, dilate=args.dilate)
    summary = {
        "omega": [i for i in range(grid.total) if result.omega >> i & 1],
        "preperiod": result.preperiod,
        "period": result.period,
        "attraction_trace_zero_from_preperiod": attraction_trace_check(result),
    }
    if args.out == "-":
        sys.stdout.write(buf.getvalue())
        sys.stderr.write(jsonio.dumps_canonical(summary))
    else:
        _write(args.out, buf.getvalue())
        sys.stdout.write(jsonio.dumps_canonical(summary))
    return 0


def cmd_verify(args) -> int:
    _threads_cap()
    if args.budget < 1:
        raise MalformedInputError("--budget must be positive")
    if args.suite == "all":
        reports = theoremlab.run_all(budget=args.budget, seed=args.seed)
    else:
        reports = [theoremlab.run_suite(args.suite, budget=args.budget,
                                        seed=args.seed)]
    payload = {
        "budget": args.budget,
        "seed": args.seed,
        "suites": [theoremlab.report_to_dict(r) for r in reports],
    }
    text = jsonio.dumps_canonical(payload)
    _write(args.out, text)
    stream = sys.stderr if args.out == "-" else sys.stdout
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        stream.write(f"{status} {r.suite}: {r.instances} instances, "
                     f"{len(r.violations)} violations, "
                     f"{r.exhibit_count} exhibits, {r.unknowns} unknowns "
                     f"({r.elapsed_seconds:.2f}s)\n")
    return 1 if any(not r.passed for r in reports) else 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "space":
            return cmd_space(args)
        if args.command == "net":
            return cmd_net(args)
        if args.command == "omega":
            return cmd_omega(args)
        if args.command == "verify":
            return cmd_verify(args)
        raise MalformedInputError(f"unknown command: {args.command!r}")
    except (LimitsetError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"limitset-lab: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
