"""Regenerate the bundled dataset registry in ``data/``.

The published tables behind the Gini figures are not reproduced in print, so
the financial datasets here are recreations: 100 equal-population bins with a
lognormal profile (plus a cohort of zero-wealth bins where appropriate) whose
shape parameter is calibrated until the binned Gini hits the published value.
Natural assets are recreated from published means / spreads / percentiles.

The script is deterministic; rerunning it rewrites byte-identical files.

    python scripts/build_bundled_data.py [--out data]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import numpy as np
from scipy import optimize, stats

from pie.dataset_io import load_dataset, load_manifest, write_quantile_csv
from pie.distribution import BinnedDistribution, QuantileTable
from pie.lorenz import gini

BINS = 100

# name, category, units, mean level, published Gini, zero bins, year, citation
FINANCIAL = [
    ("income_global", "income", "USD PPP", 15_000, 0.67, 0, 2017, "[26][27] global gross income"),
    ("income_us", "income", "USD", 90_000, 0.55, 0, 2019, "[27] US gross income"),
    ("income_greece", "income", "EUR", 24_000, 0.50, 0, 2019, "[27] Greece gross income"),
    ("income_us_post_tax", "income_post_tax", "USD", 72_000, 0.38, 0, 2019, "[27] US income after taxes and transfers"),
    ("income_greece_post_tax", "income_post_tax", "EUR", 20_000, 0.32, 0, 2019, "[27] Greece income after taxes and transfers"),
    ("wealth_us", "wealth", "USD", 550_000, 0.82, 8, 2021, "[28] US household wealth"),
    ("wealth_global", "wealth", "USD", 85_000, 0.85, 5, 2021, "[28] global wealth"),
    ("wealth_greece", "wealth", "EUR", 110_000, 0.52, 2, 2021, "[28] Greece wealth"),
]

NATURAL = [
    {
        "name": "height_male_global", "units": "cm", "kind": "parametric", "year": 2019,
        "parametric": {"family": "normal", "loc": 171.0, "scale": 7.1, "lower": 0.0, "bin_count": 1000},
        "citation": "[6][7][8] height, global adult males", "changeability": 0.0,
    },
    {
        "name": "height_female_global", "units": "cm", "kind": "parametric", "year": 2019,
        "parametric": {"family": "normal", "loc": 159.5, "scale": 6.6, "lower": 0.0, "bin_count": 1000},
        "citation": "[6][7][8] height, global adult females", "changeability": 0.0,
    },
    {
        "name": "iq", "units": "IQ points", "kind": "parametric",
        "parametric": {"family": "normal", "loc": 100.0, "scale": 15.0, "lower": 0.0, "bin_count": 1000},
        "citation": "[9][10] IQ", "changeability": 0.1,
    },
    {
        "name": "weight_us_male", "units": "lbs", "kind": "quantile", "year": 2018,
        "table": [(0, 105), (5, 144), (10, 153), (25, 171), (50, 194), (75, 222), (90, 253),
                  (95, 275), (99, 330), (99.9, 420), (100, 650)],
        "citation": "[11][12] weight, US adult males", "changeability": 0.4,
    },
    {
        "name": "weight_us_female", "units": "lbs", "kind": "quantile", "year": 2018,
        "table": [(0, 85), (5, 114), (10, 121), (25, 137), (50, 161), (75, 192), (90, 226),
                  (95, 250), (99, 305), (99.9, 400), (100, 600)],
        "citation": "[11][12] weight, US adult females", "changeability": 0.4,
    },
    {
        "name": "beauty_okcupid", "units": "score (1 to 5)", "kind": "parametric",
        "parametric": {"family": "normal", "loc": 2.7, "scale": 0.9, "lower": 1.0, "bin_count": 1000},
        "citation": "[13] average beauty score, OK Cupid survey", "changeability": 0.3,
    },
    {
        "name": "digits_memorized", "units": "digits", "kind": "quantile",
        "table": [(0, 3), (10, 5), (30, 6), (50, 7), (70, 8), (90, 9), (99, 12), (100, 20)],
        "citation": "[14][15][16] number of digits memorized", "changeability": 0.5,
    },
    {
        "name": "life_expectancy_us_2020", "units": "years", "kind": "binned", "year": 2020,
        "bins": [(0.006, 0), (0.004, 10), (0.01, 22), (0.02, 32), (0.03, 42), (0.06, 52),
                 (0.12, 62), (0.19, 72), (0.25, 82), (0.24, 90), (0.07, 97)],
        "citation": "[17][18] age at death, US 2020", "changeability": 0.3,
    },
    {
        "name": "life_expectancy_global_2020", "units": "years", "kind": "binned", "year": 2020,
        "bins": [(0.04, 0), (0.02, 3), (0.02, 12), (0.04, 25), (0.05, 40), (0.09, 52),
                 (0.15, 62), (0.21, 71), (0.22, 80), (0.13, 88), (0.03, 95)],
        "citation": "[17][18] age at death, global 2020", "changeability": 0.3,
    },
    {
        "name": "life_expectancy_global_1950", "units": "years", "kind": "binned", "year": 1950,
        "bins": [(0.19, 0), (0.09, 3), (0.04, 12), (0.06, 25), (0.07, 40), (0.10, 52),
                 (0.15, 62), (0.15, 70), (0.11, 78), (0.04, 86)],
        "citation": "[17][18] age at death, global 1950", "changeability": 0.3,
    },
    {
        "name": "running_speed_global", "units": "mph", "kind": "parametric",
        "parametric": {"family": "lognormal", "loc": 1.75, "scale": 0.55, "lower": 0.0, "bin_count": 1000},
        "citation": "[19][20] running speed, global adults", "changeability": 0.8,
    },
    {
        "name": "benchpress_max", "units": "lbs", "kind": "quantile",
        "table": [(0, 0), (15, 0), (25, 45), (40, 85), (50, 105), (60, 125), (75, 160),
                  (90, 215), (99, 315), (100, 500)],
        "citation": "[21][22][23] max benchpress, global adults", "changeability": 0.85,
    },
    {
        "name": "facebook_friends_2015", "units": "friends", "kind": "parametric", "year": 2015,
        "parametric": {"family": "lognormal", "loc": 5.3, "scale": 0.97, "lower": 0.0, "bin_count": 1000},
        "citation": "[24] number of Facebook friends", "changeability": 0.9,
    },
]


def _profile(sigma: float, zero_bins: int) -> np.ndarray:
    mid = (np.arange(BINS - zero_bins) + 0.5) / (BINS - zero_bins)
    pos = np.exp(sigma * stats.norm.ppf(mid))
    return np.concatenate((np.zeros(zero_bins), pos))


def _financial_levels(mean: float, target: float, zero_bins: int) -> np.ndarray:
    shares = np.full(BINS, 1.0 / BINS)

    def g(sigma):
        return gini(BinnedDistribution.from_arrays(shares, _profile(sigma, zero_bins))).value - target

    sigma = optimize.brentq(g, 1e-3, 6.0, xtol=1e-14)
    x = _profile(sigma, zero_bins)
    x = x * mean / np.mean(x)
    return np.round(x, 2)


def _write_csv(path: Path, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for a, b in rows:
            fh.write(f"{a!r},{b!r}\n")


def _write_json(path: Path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data")
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name, category, units, mean, target, zeros, year, cite in FINANCIAL:
        levels = _financial_levels(mean, target, zeros)
        csv_name = f"{name}.csv"
        _write_csv(out / csv_name, "pop_share,level", [(0.01, float(v)) for v in levels])
        pinned = gini(BinnedDistribution.from_arrays(np.full(BINS, 0.01), levels)).value
        _write_json(out / f"{name}.json", {
            "name": name, "units": units, "kind": "binned", "source_path": csv_name,
            "category": category, "year": year,
            "citation": f"{cite}; recreated 100-bin table, published Gini {target:.2f}, pinned Gini {pinned:.6f}",
        })
        print(f"{name:28s} {pinned:.6f}")

    for item in NATURAL:
        doc = {k: item[k] for k in ("name", "units", "kind") if k in item}
        if item["kind"] == "binned":
            doc["source_path"] = f"{item['name']}.csv"
            _write_csv(out / doc["source_path"], "pop_share,level", item["bins"])
        elif item["kind"] == "quantile":
            doc["source_path"] = f"{item['name']}.csv"
            doc["bin_count"] = 1000
            write_quantile_csv(QuantileTable(tuple(item["table"])), out / doc["source_path"])
        else:
            doc["parametric"] = item["parametric"]
        doc["category"] = "natural"
        if "year" in item:
            doc["year"] = item["year"]
        doc["changeability"] = item["changeability"]
        path = out / f"{item['name']}.json"
        doc["citation"] = item["citation"] + "; recreated"
        _write_json(path, doc)
        pinned = gini(load_dataset(load_manifest(path))).value
        doc["citation"] += f", pinned Gini {pinned:.6f}"
        _write_json(path, doc)
        print(f"{item['name']:28s} {pinned:.6f}")


if __name__ == "__main__":
    main()
