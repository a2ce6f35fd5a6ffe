"""``pie`` command line.

Exit codes: 0 success, 1 input or validation error, 2 solver failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pie import dataset_io as dio
from pie.errors import PieError, SolverError
from pie.lorenz import gini, lorenz_curve, top_share
from pie.redistribution import scenario_table, solve_target_gini
from pie.report import load_config, run_report, write_scenario_csv
from pie.svg import write_lorenz_svg


def _load(ref, args):
    m = dio.load_manifest(dio.resolve_manifest(ref, args.data_dir))
    return m, dio.load_dataset(m)


def cmd_gini(args):
    m, dist = _load(args.manifest, args)
    g = gini(dist, args.method)
    print(f"{m.name}\t{m.category}\t{dio.fmt9(g.value)}\t{g.method}")
    if args.top:
        for p in args.top:
            print(f"top {p:g}\t{dio.fmt9(top_share(dist, p))}")


def cmd_lorenz(args):
    m, dist = _load(args.manifest, args)
    curve = lorenz_curve(dist)
    dio.write_lorenz_csv(curve, args.output)
    if args.svg:
        write_lorenz_svg([(m.name, m.category, curve)], args.svg, title=m.name)


def cmd_redistribute(args):
    m, dist = _load(args.manifest, args)
    sol = solve_target_gini(dist, args.target_gini, args.tol)
    print(f"dataset\t{m.name}")
    print(f"initial_gini\t{dio.fmt9(sol.initial_gini)}")
    print(f"achieved_gini\t{dio.fmt9(sol.achieved_gini)}")
    print(f"floor_boost\t{sol.floor_boost!r}")
    print(f"step_factor\t{sol.step_factor!r}")
    print(f"iterations\t{sol.iterations}")
    if args.output:
        dio.write_binned_csv(sol.result, args.output)


def cmd_scenario(args):
    _, income = _load(args.income, args)
    _, wealth = _load(args.wealth, args)
    tables = scenario_table(income, wealth, args.target_gini, args.segments, args.tol)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for t in tables:
        write_scenario_csv(t, out / f"scenario_{t.resource}.csv")
        s = t.solution
        print(f"{t.resource}\tG0={dio.fmt9(s.initial_gini)}\tG={dio.fmt9(s.achieved_gini)}"
              f"\tb={s.floor_boost!r}\tf={s.step_factor!r}")


def cmd_report(args):
    cfg = load_config(args.config)
    bundle = run_report(cfg, args.output, args.data_dir)
    for f in bundle.files:
        print(f)


def cmd_datasets(args):
    for p in dio.registry(args.data_dir):
        m = dio.load_manifest(p)
        print(f"{m.name}\t{m.category}\t{m.kind}\t{m.units}")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 so that 2 stays reserved for solver failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting a --data-dir given before it
    common.add_argument("--data-dir", default=argparse.SUPPRESS,
                        help="dataset registry directory (default $PIE_DATA_DIR or ./data)")

    ap = _Parser(prog="pie", description="Lorenz curves, Gini indexes and target-Gini redistribution.",
                                 parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gini", parents=[common], help="print the Gini index of a dataset")
    p.add_argument("manifest")
    p.add_argument("--method", choices=("trapezoid", "pairwise"), default="trapezoid")
    p.add_argument("--top", type=float, nargs="*", help="also print top-p resource shares")
    p.set_defaults(func=cmd_gini)

    p = sub.add_parser("lorenz", parents=[common], help="write a Lorenz series CSV")
    p.add_argument("manifest")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_lorenz)

    p = sub.add_parser("redistribute", parents=[common], help="calibrate a dataset to a target Gini")
    p.add_argument("manifest")
    p.add_argument("--target-gini", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("-o", "--output", help="write the calibrated distribution as a binned CSV")
    p.set_defaults(func=cmd_redistribute)

    p = sub.add_parser("scenario", parents=[common], help="per-capita income/wealth scenario tables")
    p.add_argument("--income", required=True)
    p.add_argument("--wealth", required=True)
    p.add_argument("--target-gini", type=float, default=0.5)
    p.add_argument("--segments", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("report", parents=[common], help="run a full report from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("datasets", parents=[common], help="list the dataset registry")
    p.set_defaults(func=cmd_datasets)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.data_dir = getattr(args, "data_dir", None)
    try:
        args.func(args)
    except SolverError as exc:
        print(f"pie: solver failure: {exc}", file=sys.stderr)
        return 2
    except (PieError, OSError) as exc:
        print(f"pie: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
