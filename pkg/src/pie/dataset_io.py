"""File formats, JSON manifests and the bundled dataset registry.

Three CSV formats, all UTF-8 with LF line endings:

``pop_share,level``
    binned distribution, full-precision decimals.
``cum_pop_pct,level``
    quantile table; ``cum_pop_pct`` strictly increasing and ending at 100.
``cum_pop,cum_resource``
    Lorenz series written with 9 decimal places.

A manifest is one JSON object per dataset::

    {
      "name": "wealth_us", "units": "USD", "kind": "binned",
      "source_path": "wealth_us.csv",
      "category": "wealth", "citation": "...", "year": 2022
    }

``kind`` is ``binned``, ``quantile`` (optional ``bin_count``, default 1000)
or ``parametric`` (with an inline ``parametric`` object holding ``family``,
``loc``, ``scale`` and optionally ``lower`` and ``bin_count``). Natural-asset
manifests may carry a ``changeability`` rating in ``[0, 1]``.
``source_path`` is resolved relative to the manifest's directory.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from pie.distribution import (
    BinnedDistribution,
    ParametricSpec,
    QuantileTable,
    build_binned,
    discretize_parametric,
    from_quantile_table,
)
from pie.errors import DatasetNotFound, MissingPayload, ParseError, PieError, UnknownKind
from pie.lorenz import LorenzCurve

KINDS = ("binned", "quantile", "parametric")
CATEGORIES = ("natural", "income", "income_post_tax", "wealth")
BINNED_HEADER = "pop_share,level"
QUANTILE_HEADER = "cum_pop_pct,level"
LORENZ_HEADER = "cum_pop,cum_resource"
DEFAULT_QUANTILE_BINS = 1000
DEFAULT_DATA_DIR = "./data"


def fmt9(x: float) -> str:
    """Fixed 9-decimal rendering used by every report CSV (no negative zero)."""
    s = f"{x:.9f}"
    return "0.000000000" if s == "-0.000000000" else s


@dataclass(frozen=True)
class DatasetManifest:
    name: str
    units: str
    kind: str
    category: str
    citation: str = ""
    source_path: Path | None = None
    parametric: ParametricSpec | None = None
    bin_count: int = DEFAULT_QUANTILE_BINS
    year: int | None = None
    changeability: float | None = None
    path: Path | None = field(default=None, compare=False)


def _require(obj: dict, key: str, typ, path, line=None):
    if key not in obj:
        raise ParseError("missing required field", path=path, line=line, field=key)
    val = obj[key]
    if not isinstance(val, typ) or isinstance(val, bool):
        raise ParseError(f"expected {getattr(typ, '__name__', typ)}, got {type(val).__name__}", path=path, field=key)
    return val


def _number(obj: dict, key: str, path, default=None):
    if key not in obj:
        if default is None:
            raise ParseError("missing required field", path=path, field=key)
        return default
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ParseError(f"expected a number, got {type(val).__name__}", path=path, field=key)
    return val


def parse_manifest(doc: dict, path: Path | None = None) -> DatasetManifest:
    if not isinstance(doc, dict):
        raise ParseError("manifest must be a JSON object", path=path)
    name = _require(doc, "name", str, path)
    units = _require(doc, "units", str, path)
    kind = _require(doc, "kind", str, path)
    if kind not in KINDS:
        raise UnknownKind(f"unknown kind {kind!r}; expected one of {KINDS}", path=path, field="kind")
    category = _require(doc, "category", str, path)
    if category not in CATEGORIES:
        raise ParseError(f"unknown category {category!r}; expected one of {CATEGORIES}", path=path, field="category")
    citation = doc.get("citation", "")
    if not isinstance(citation, str):
        raise ParseError("expected a string", path=path, field="citation")

    year = doc.get("year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise ParseError("expected an integer", path=path, field="year")
    changeability = doc.get("changeability")
    if changeability is not None:
        changeability = _number(doc, "changeability", path)
        if not 0.0 <= changeability <= 1.0:
            raise ParseError(f"changeability {changeability} outside [0, 1]", path=path, field="changeability")
        changeability = float(changeability)

    base = path.parent if path is not None else Path(".")
    source_path = None
    spec = None
    bin_count = DEFAULT_QUANTILE_BINS
    if kind in ("binned", "quantile"):
        src = doc.get("source_path")
        if not src:
            raise MissingPayload(f"kind={kind} requires source_path", path=path, field="source_path")
        if not isinstance(src, str):
            raise ParseError("expected a string", path=path, field="source_path")
        source_path = base / src
        if kind == "quantile":
            bin_count = _number(doc, "bin_count", path, DEFAULT_QUANTILE_BINS)
            if int(bin_count) != bin_count or bin_count < 1:
                raise ParseError(f"bin_count must be a positive integer, got {bin_count}", path=path, field="bin_count")
            bin_count = int(bin_count)
    else:
        params = doc.get("parametric")
        if not params:
            raise MissingPayload("kind=parametric requires a parametric object", path=path, field="parametric")
        if not isinstance(params, dict):
            raise ParseError("expected an object", path=path, field="parametric")
        family = params.get("family")
        if not isinstance(family, str):
            raise ParseError("expected a string", path=path, field="parametric.family")
        try:
            spec = ParametricSpec(
                family=family,
                loc=float(_number(params, "loc", path)),
                scale=float(_number(params, "scale", path)),
                lower=float(_number(params, "lower", path, 0.0)),
                bin_count=int(_number(params, "bin_count", path, 1000)),
            )
        except ParseError as exc:
            raise ParseError(exc.message, path=path, field=f"parametric.{exc.field}") from exc
        except PieError as exc:
            raise ParseError(str(exc), path=path, field="parametric") from exc

    return DatasetManifest(
        name=name,
        units=units,
        kind=kind,
        category=category,
        citation=citation,
        source_path=source_path,
        parametric=spec,
        bin_count=bin_count,
        year=year,
        changeability=changeability,
        path=path,
    )


def load_manifest(path) -> DatasetManifest:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise DatasetNotFound(f"manifest not found: {path}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path=path, line=exc.lineno) from exc
    try:
        return parse_manifest(doc, path)
    except ParseError as exc:
        if exc.line is not None or exc.field is None:
            raise
        keys = exc.field.split(".")[::-1]
        line = next((n for n in (_key_line(text, k) for k in keys) if n is not None), None)
        raise type(exc)(exc.message, path=path, line=line, field=exc.field) from exc.__cause__


def _key_line(text: str, key: str) -> int | None:
    """1-based line of the first ``"key":`` in ``text``."""
    needle = f'"{key}"'
    for i, row in enumerate(text.splitlines(), 1):
        if needle in row:
            return i
    return None


def _read_rows(path: Path, header: str) -> list[tuple[int, float, float]]:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            rows = []
            first = next(reader, None)
            if first is None or ",".join(first) != header:
                raise ParseError(f"header must be exactly {header!r}", path=path, line=1)
            for rec in reader:
                if not rec:
                    continue
                if len(rec) != 2:
                    raise ParseError(f"expected 2 columns, got {len(rec)}", path=path, line=reader.line_num)
                try:
                    rows.append((reader.line_num, float(rec[0]), float(rec[1])))
                except ValueError as exc:
                    raise ParseError(f"not a number: {exc}", path=path, line=reader.line_num) from exc
    except FileNotFoundError as exc:
        raise DatasetNotFound(f"data file not found: {path}") from exc
    if not rows:
        raise ParseError("no data rows", path=path)
    return rows


def read_binned_csv(path, name: str = "", units: str = "") -> BinnedDistribution:
    rows = _read_rows(Path(path), BINNED_HEADER)
    return build_binned([(w, x) for _, w, x in rows], name, units)


def write_binned_csv(dist: BinnedDistribution, path) -> None:
    lines = [BINNED_HEADER] + [f"{float(w)!r},{float(x)!r}" for w, x in zip(dist.shares, dist.levels)]
    write_lines(path, lines)


def read_quantile_csv(path) -> QuantileTable:
    rows = _read_rows(Path(path), QUANTILE_HEADER)
    return QuantileTable(tuple((p, x) for _, p, x in rows))


def write_quantile_csv(table: QuantileTable, path) -> None:
    lines = [QUANTILE_HEADER] + [f"{p!r},{x!r}" for p, x in table.points]
    write_lines(path, lines)


def write_lorenz_csv(curve: LorenzCurve, path) -> None:
    lines = [LORENZ_HEADER] + [f"{fmt9(p)},{fmt9(r)}" for p, r in zip(curve.cum_pop, curve.cum_resource)]
    write_lines(path, lines)


def read_lorenz_csv(path) -> list[tuple[float, float]]:
    return [(p, r) for _, p, r in _read_rows(Path(path), LORENZ_HEADER)]


def write_lines(path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_dataset(manifest: DatasetManifest) -> BinnedDistribution:
    if manifest.kind == "binned":
        return read_binned_csv(manifest.source_path, manifest.name, manifest.units)
    if manifest.kind == "quantile":
        table = read_quantile_csv(manifest.source_path)
        return from_quantile_table(table, manifest.bin_count, manifest.name, manifest.units)
    if manifest.kind == "parametric":
        return discretize_parametric(manifest.parametric, manifest.name, manifest.units)
    raise UnknownKind(f"unknown kind {manifest.kind!r}")


def data_dir(explicit=None) -> Path:
    """``explicit`` if given, else ``$PIE_DATA_DIR``, else ``./data``."""
    if explicit:
        return Path(explicit)
    return Path(os.environ.get("PIE_DATA_DIR", DEFAULT_DATA_DIR))


def registry(root=None) -> list[Path]:
    """Every manifest (``*.json``) in the registry directory, sorted by name."""
    root = data_dir(root)
    if not root.is_dir():
        raise DatasetNotFound(f"data directory not found: {root}")
    return sorted(root.glob("*.json"))


def resolve_manifest(ref, root=None) -> Path:
    """Accept a manifest path, or a bare dataset name looked up in the registry."""
    p = Path(ref)
    if p.is_file():
        return p
    for candidate in (data_dir(root) / ref, data_dir(root) / f"{ref}.json"):
        if candidate.is_file():
            return candidate
    raise DatasetNotFound(f"no manifest {ref!r} (looked in {data_dir(root)})")
