"""Run the bundled report and print the Gini table, scenario solves and rank correlation.

    python3 scripts/run_report.py [--config configs/bundled_report.json] [-o out/report]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from pie.report import load_config, run_report

ROOT = Path(__file__).resolve().parent.parent


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=ROOT / "configs" / "bundled_report.json")
    ap.add_argument("--data-dir", default=ROOT / "data")
    ap.add_argument("-o", "--output", default=ROOT / "out" / "report")
    args = ap.parse_args(argv)

    bundle = run_report(load_config(args.config), args.output, args.data_dir)
    for name, category, g in sorted(bundle.gini_table, key=lambda r: r[2]):
        print(f"{name:30s} {category:16s} {g:.4f}")
    print()
    for label, tables in bundle.scenario_tables.items():
        for t in tables:
            s = t.solution
            print(f"{label:8s} {t.resource:7s} G0 {s.initial_gini:.4f} -> {s.achieved_gini:.4f}"
                  f"  floor boost {s.floor_boost:,.2f}  step factor {s.step_factor:.4f}")
    print(f"\nSpearman rho (Gini vs changeability): {bundle.correlation:.4f}")
    print(f"{len(bundle.files)} files written to {args.output}")


if __name__ == "__main__":
    main()
