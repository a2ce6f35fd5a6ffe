"""Report generation: Gini table, Lorenz series, scenario tables and the
Gini-versus-changeability rank correlation.

A run configuration is a JSON document::

    {
      "manifests": ["wealth_us", "income_us", "data/iq.json"],
      "target_gini": 0.5,
      "segments": 100,
      "svg": true,
      "scenarios": [{"label": "us", "income": "income_us", "wealth": "wealth_us"}]
    }

Manifest references are either paths (relative to the config file) or bare
dataset names looked up in the registry directory. ``"manifests": "*"`` means
every manifest in the registry.

Outputs are first written to a scratch directory beside the destination and
only moved into place once everything has succeeded, so a failed run leaves
nothing behind.
"""

from __future__ import annotations

import json
import math
import shutil
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import rankdata

from pie import dataset_io as dio
from pie.errors import ParseError, PieError, TooFewEntries
from pie.lorenz import gini, lorenz_curve
from pie.redistribution import ScenarioTable, scenario_table
from pie.svg import write_lorenz_svg

SCENARIO_HEADER = "segment,pop_share,current,equal,target"


def changeability_correlation(entries) -> float:
    """Spearman rank correlation of ``(gini, changeability)`` pairs.

    Ties get average ranks.
    """
    entries = list(entries)
    if len(entries) < 3:
        raise TooFewEntries(f"need at least 3 entries, got {len(entries)}")
    g = np.array([e[0] for e in entries], dtype=float)
    c = np.array([e[1] for e in entries], dtype=float)
    if np.any(np.isnan(c)):
        raise PieError("every entry needs a changeability rating")
    rg, rc = rankdata(g), rankdata(c)
    rg -= rg.mean()
    rc -= rc.mean()
    denom = math.sqrt(float(np.dot(rg, rg)) * float(np.dot(rc, rc)))
    if denom == 0:
        raise PieError("rank correlation undefined: one variable is constant")
    return max(-1.0, min(1.0, float(np.dot(rg, rc)) / denom))


@dataclass(frozen=True)
class Scenario:
    label: str
    income: str
    wealth: str


@dataclass(frozen=True)
class ReportConfig:
    manifests: tuple[str, ...]
    target_gini: float = 0.5
    segments: int = 100
    tol: float = 1e-9
    svg: bool = False
    scenarios: tuple[Scenario, ...] = ()
    base_dir: Path = field(default=Path("."), compare=False)


def load_config(path) -> ReportConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise dio.DatasetNotFound(f"config not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path=path, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("config must be a JSON object", path=path)
    manifests = doc.get("manifests", [])
    if manifests == "*":
        manifests = ["*"]
    if not isinstance(manifests, list) or not all(isinstance(m, str) for m in manifests):
        raise ParseError("expected a list of strings", path=path, field="manifests")
    try:
        scenarios = tuple(Scenario(s["label"], s["income"], s["wealth"]) for s in doc.get("scenarios", []))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"scenario entries need label, income and wealth ({exc})", path=path, field="scenarios") from exc
    return ReportConfig(
        manifests=tuple(manifests),
        target_gini=float(doc.get("target_gini", 0.5)),
        segments=int(doc.get("segments", 100)),
        tol=float(doc.get("tol", 1e-9)),
        svg=bool(doc.get("svg", False)),
        scenarios=scenarios,
        base_dir=path.parent,
    )


@dataclass
class ReportBundle:
    gini_table: list[tuple[str, str, float]]
    lorenz_files: dict[str, Path]
    scenario_tables: dict[str, tuple[ScenarioTable, ScenarioTable]]
    correlation: float | None
    files: list[Path]


def _resolve(ref: str, cfg: ReportConfig, data_dir) -> Path:
    p = cfg.base_dir / ref
    if p.is_file():
        return p
    return dio.resolve_manifest(ref, data_dir)


def _manifest_paths(cfg: ReportConfig, data_dir) -> list[Path]:
    paths = []
    for ref in cfg.manifests:
        if ref == "*":
            paths.extend(dio.registry(data_dir))
        else:
            paths.append(_resolve(ref, cfg, data_dir))
    return paths


def write_scenario_csv(table: ScenarioTable, path) -> None:
    lines = [SCENARIO_HEADER] + [
        f"{k},{dio.fmt9(w)},{dio.fmt9(c)},{dio.fmt9(e)},{dio.fmt9(t)}" for k, w, c, e, t in table.rows
    ]
    dio.write_lines(path, lines)


def run_report(cfg: ReportConfig, out_dir, data_dir=None) -> ReportBundle:
    """Compute every artifact and write it under ``out_dir``."""
    paths = _manifest_paths(cfg, data_dir)
    if not paths and not cfg.scenarios:
        raise PieError("report lists no datasets")

    out_dir = Path(out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    scratch = Path(tempfile.mkdtemp(prefix=".pie-report-", dir=out_dir.parent))
    try:
        bundle = _build(cfg, paths, scratch, data_dir)
        out_dir.mkdir(exist_ok=True)
        moved = []
        for f in bundle.files:
            dest = out_dir / f.relative_to(scratch)
            dest.parent.mkdir(parents=True, exist_ok=True)
            shutil.move(str(f), str(dest))
            moved.append(dest)
        bundle.files = moved
        bundle.lorenz_files = {k: out_dir / v.relative_to(scratch) for k, v in bundle.lorenz_files.items()}
        return bundle
    finally:
        shutil.rmtree(scratch, ignore_errors=True)


def _build(cfg: ReportConfig, paths, scratch: Path, data_dir) -> ReportBundle:
    manifests = [dio.load_manifest(p) for p in paths]
    names = [m.name for m in manifests]
    if len(set(names)) != len(names):
        raise PieError("duplicate dataset names in report")

    files = []
    rows = []
    lorenz_files = {}
    series = []
    natural = []
    (scratch / "lorenz").mkdir()
    for m in manifests:
        dist = dio.load_dataset(m)
        g = gini(dist).value
        rows.append((m.name, m.category, g))
        curve = lorenz_curve(dist)
        lf = scratch / "lorenz" / f"{m.name}.csv"
        dio.write_lorenz_csv(curve, lf)
        lorenz_files[m.name] = lf
        files.append(lf)
        series.append((m.name, m.category, curve))
        if m.category == "natural" and m.changeability is not None:
            natural.append((m.name, g, m.changeability))

    if rows:
        gt = scratch / "gini_table.csv"
        dio.write_lines(gt, ["dataset,category,gini"] + [f"{n},{c},{dio.fmt9(g)}" for n, c, g in rows])
        files.append(gt)

    if cfg.svg and series:
        svg = scratch / "lorenz.svg"
        write_lorenz_svg(series, svg)
        files.append(svg)

    rho = None
    if len(natural) >= 3:
        rho = changeability_correlation([(g, c) for _, g, c in natural])
        cf = scratch / "changeability.csv"
        dio.write_lines(
            cf,
            ["dataset,gini,changeability"] + [f"{n},{dio.fmt9(g)},{dio.fmt9(c)}" for n, g, c in natural],
        )
        files.append(cf)

    scenarios = {}
    for sc in cfg.scenarios:
        inc = dio.load_dataset(dio.load_manifest(_resolve(sc.income, cfg, data_dir)))
        wea = dio.load_dataset(dio.load_manifest(_resolve(sc.wealth, cfg, data_dir)))
        tables = scenario_table(inc, wea, cfg.target_gini, cfg.segments, cfg.tol)
        scenarios[sc.label] = tables
        for t in tables:
            sf = scratch / f"scenario_{sc.label}_{t.resource}.csv"
            write_scenario_csv(t, sf)
            files.append(sf)

    summary = {
        "datasets": len(rows),
        "natural_with_changeability": len(natural),
        "spearman_rho": None if rho is None else round(rho, 9),
        "target_gini": cfg.target_gini,
        "segments": cfg.segments,
        "scenarios": {
            label: {
                t.resource: {
                    "initial_gini": round(t.solution.initial_gini, 9),
                    "achieved_gini": round(t.solution.achieved_gini, 9),
                    "floor_boost": round(t.solution.floor_boost, 9),
                    "step_factor": round(t.solution.step_factor, 9),
                }
                for t in tables
            }
            for label, tables in scenarios.items()
        },
    }
    sm = scratch / "summary.json"
    with open(sm, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    files.append(sm)

    return ReportBundle(rows, lorenz_files, scenarios, rho, files)
