"""Monte Carlo Gini error against the closed form, RMS over seeds, per sample size.

    python3 scripts/mc_convergence.py [--seeds 10]
"""

from __future__ import annotations

import argparse

import numpy as np

from pie.distribution import ParametricSpec
from pie.sampler import analytic_gini, empirical_gini, sample_population

SPECS = {
    "normal(100,15)": ParametricSpec("normal", 100, 15),
    "lognormal(0,1)": ParametricSpec("lognormal", 0, 1),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--max-exp", type=int, default=6)
    args = ap.parse_args(argv)

    ns = [10**k for k in range(3, args.max_exp + 1)]
    for label, spec in SPECS.items():
        g = analytic_gini(spec)
        errs = np.array([[empirical_gini(sample_population(spec, n, s)).value - g for n in ns]
                         for s in range(args.seeds)])
        rms = np.sqrt(np.mean(errs**2, axis=0))
        print(f"{label}: closed form {g:.6f}")
        for i, n in enumerate(ns):
            ratio = "" if i == 0 else f"  ratio {rms[i] / rms[i - 1]:.3f}"
            print(f"  n={n:>9,d}  rms error {rms[i]:.2e}{ratio}")


if __name__ == "__main__":
    main()
