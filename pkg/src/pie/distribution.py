"""Binned resource distributions.

A population is reduced to an ordered list of bins. Each bin is a fraction of
the population whose members all hold the same per-capita level of some
resource (dollars, centimetres, IQ points...). Everything downstream (Lorenz
curves, Gini, redistribution) works on this one representation.

Bins are homogeneous: inequality inside a bin is ignored, so the Gini of a
binned distribution depends on how coarse the bins are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy import stats as _st
from scipy.special import ndtr, ndtri

from pie.errors import (
    AllZeroLevels,
    BinCountZero,
    EmptyDistribution,
    InvalidSpec,
    InvalidTable,
    NegativeLevel,
    NegativeResultLevel,
    NonPositiveShare,
    PieError,
    ShareSumOutOfTolerance,
)

SHARE_SUM_TOL = 1e-6
_RENORM_SKIP = 1e-13
FAMILIES = ("normal", "lognormal")


class ResourceBin(NamedTuple):
    pop_share: float
    level: float


class DistributionStats(NamedTuple):
    mean: float
    total: float
    min: float
    max: float


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class BinnedDistribution:
    """Population bins sorted ascending by level, shares summing to one.

    Use :func:`build_binned` or :meth:`from_arrays` rather than the
    constructor; both validate, sort and renormalize.
    """

    shares: np.ndarray
    levels: np.ndarray
    name: str = ""
    units: str = ""

    @classmethod
    def from_arrays(cls, shares, levels, name: str = "", units: str = "") -> "BinnedDistribution":
        shares = np.asarray(shares, dtype=np.float64).ravel()
        levels = np.asarray(levels, dtype=np.float64).ravel()
        if shares.size == 0:
            raise EmptyDistribution("distribution has no bins")
        if shares.shape != levels.shape:
            raise EmptyDistribution("shares and levels differ in length")
        if not np.all(np.isfinite(shares)) or not np.all(np.isfinite(levels)):
            raise NegativeLevel("non-finite share or level")
        if np.any(levels < 0):
            i = int(np.argmax(levels < 0))
            raise NegativeLevel(f"bin {i} has negative level {levels[i]!r}")
        if np.any(shares <= 0):
            i = int(np.argmax(shares <= 0))
            raise NonPositiveShare(f"bin {i} has non-positive pop_share {shares[i]!r}")
        total = math.fsum(shares)
        if abs(total - 1.0) > SHARE_SUM_TOL:
            raise ShareSumOutOfTolerance(f"pop_share sums to {total!r}, not 1 within {SHARE_SUM_TOL}")
        if not np.any(levels > 0):
            raise AllZeroLevels("every bin has level 0; total resource must be positive")

        order = np.argsort(levels, kind="stable")
        shares = shares[order]
        # already-normalized input is left untouched so construction is idempotent
        if abs(total - 1.0) > _RENORM_SKIP:
            shares = shares / total
        return cls(_frozen(shares), _frozen(levels[order]), name, units)

    def __len__(self) -> int:
        return self.shares.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinnedDistribution):
            return NotImplemented
        return (
            self.name == other.name
            and self.units == other.units
            and np.array_equal(self.shares, other.shares)
            and np.array_equal(self.levels, other.levels)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def bins(self) -> list[ResourceBin]:
        return [ResourceBin(float(w), float(x)) for w, x in zip(self.shares, self.levels)]

    @property
    def mean(self) -> float:
        return math.fsum(self.shares * self.levels)

    def with_levels(self, levels, name: str | None = None) -> "BinnedDistribution":
        """Same population shares, new levels (must already be sorted)."""
        levels = np.asarray(levels, dtype=np.float64)
        if levels.shape != self.levels.shape:
            raise PieError("level array has the wrong length")
        return BinnedDistribution(
            self.shares, _frozen(levels), self.name if name is None else name, self.units
        )


def build_binned(bins: Iterable[ResourceBin | Sequence[float]], name: str = "", units: str = "") -> BinnedDistribution:
    """Validate, stably sort by level and renormalize a list of bins.

    Parameters
    ----------
    bins : iterable of ``(pop_share, level)`` pairs
        Shares must be positive and sum to 1 within 1e-6; levels must be
        non-negative with at least one positive.
    name, units : str
        Labels carried through to reports.

    Raises
    ------
    EmptyDistribution, NegativeLevel, NonPositiveShare,
    ShareSumOutOfTolerance, AllZeroLevels
    """
    pairs = [tuple(b) for b in bins]
    if not pairs:
        raise EmptyDistribution("distribution has no bins")
    arr = np.array(pairs, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise EmptyDistribution("each bin must be a (pop_share, level) pair")
    return BinnedDistribution.from_arrays(arr[:, 0], arr[:, 1], name, units)


def stats(dist: BinnedDistribution) -> DistributionStats:
    mu = dist.mean
    # shares sum to one, so total resource per capita of population equals the mean
    return DistributionStats(mean=mu, total=mu, min=float(dist.levels[0]), max=float(dist.levels[-1]))


def affine_transform(dist: BinnedDistribution, a: float, c: float) -> BinnedDistribution:
    """Map every level ``x`` to ``a*x + c``.

    ``a`` is a change of units; ``c`` shifts every bin by the same amount.
    Shares and ordering are untouched.
    """
    if not a > 0:
        raise PieError(f"scale factor must be positive, got {a!r}")
    levels = a * dist.levels + c
    if a * dist.levels[0] + c < 0:
        raise NegativeResultLevel(f"lowest level would become {a * dist.levels[0] + c!r}")
    # rounding can push an exact zero a hair negative
    levels = np.maximum(levels, 0.0)
    if not np.any(levels > 0):
        raise AllZeroLevels("transform maps every level to zero")
    return dist.with_levels(levels)


@dataclass(frozen=True)
class QuantileTable:
    """Cumulative-population percent to level mapping, e.g. a percentile table."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(p), float(x)) for p, x in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise InvalidTable("quantile table needs at least two rows")
        pct = np.array([p for p, _ in pts])
        lev = np.array([x for _, x in pts])
        if not (np.all(np.isfinite(pct)) and np.all(np.isfinite(lev))):
            raise InvalidTable("non-finite entry in quantile table")
        if pct[0] < 0 or pct[-1] != 100:
            raise InvalidTable("cum_pop_pct must start at >= 0 and end at exactly 100")
        if np.any(np.diff(pct) <= 0):
            raise InvalidTable("cum_pop_pct must be strictly increasing")
        if np.any(np.diff(lev) < 0):
            raise InvalidTable("levels must be non-decreasing")
        if lev[0] < 0:
            raise InvalidTable("levels must be non-negative")

    @property
    def cum_pop_pct(self) -> np.ndarray:
        return np.array([p for p, _ in self.points])

    @property
    def levels(self) -> np.ndarray:
        return np.array([x for _, x in self.points])


def from_quantile_table(table: QuantileTable, bin_count: int, name: str = "", units: str = "") -> BinnedDistribution:
    """Split the population into ``bin_count`` equal bins.

    Each bin takes the piecewise-linear interpolated level at its population
    midpoint. Below the first tabulated percentile the first level is held
    constant.
    """
    if bin_count < 1:
        raise BinCountZero(f"bin_count must be >= 1, got {bin_count}")
    mid = (np.arange(bin_count) + 0.5) / bin_count * 100.0
    levels = np.interp(mid, table.cum_pop_pct, table.levels)
    shares = np.full(bin_count, 1.0 / bin_count)
    return BinnedDistribution.from_arrays(shares, levels, name, units)


@dataclass(frozen=True)
class ParametricSpec:
    """A normal or lognormal population truncated below at ``lower``.

    For ``normal`` the location/scale are the mean and standard deviation;
    for ``lognormal`` they are the mean and standard deviation of ``log(x)``.
    """

    family: str
    loc: float
    scale: float
    lower: float = 0.0
    bin_count: int = 1000

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        for k in ("loc", "scale", "lower"):
            if not math.isfinite(getattr(self, k)):
                raise InvalidSpec(f"{k} must be finite")
        if self.scale < 0:
            raise InvalidSpec(f"scale must be >= 0, got {self.scale}")
        if self.lower < 0:
            raise InvalidSpec(f"truncation bound must be >= 0, got {self.lower}")
        if int(self.bin_count) != self.bin_count or self.bin_count < 2:
            raise InvalidSpec(f"bin_count must be an integer >= 2, got {self.bin_count}")
        if self.scale == 0 and self.point_value < self.lower:
            raise InvalidSpec("degenerate spec lies below the truncation bound")
        if self.scale > 0 and self.lower_cdf >= 1.0:
            raise InvalidSpec("truncation removes the entire distribution")

    @property
    def point_value(self) -> float:
        """Value of the degenerate (scale 0) distribution."""
        return self.loc if self.family == "normal" else math.exp(self.loc)

    @property
    def lower_cdf(self) -> float:
        """Probability mass of the untruncated family below ``lower``."""
        if self.scale == 0:
            return 0.0
        if self.family == "normal":
            return float(_st.norm.cdf((self.lower - self.loc) / self.scale))
        if self.lower <= 0:
            return 0.0
        return float(_st.norm.cdf((math.log(self.lower) - self.loc) / self.scale))

    def quantile(self, p) -> np.ndarray:
        """Quantile function of the truncated family, clamped at ``lower``."""
        p = np.asarray(p, dtype=np.float64)
        if self.scale == 0:
            return np.full(p.shape, self.point_value)
        lo = self.lower_cdf
        z = _st.norm.ppf(lo + p * (1.0 - lo))
        if self.family == "normal":
            x = self.loc + self.scale * z
        else:
            x = np.exp(self.loc + self.scale * z)
        return np.maximum(x, self.lower)


    def bin_means(self, n: int) -> np.ndarray:
        """Mean of the truncated family inside each of ``n`` equal-probability slices."""
        if self.scale == 0:
            return np.full(n, self.point_value)
        lo = self.lower_cdf
        mass = (1.0 - lo) / n
        z = ndtri(lo + np.arange(n + 1) / n * (1.0 - lo))
        z[-1] = np.inf
        if self.family == "normal":
            # E[Z; a < Z < b] = phi(a) - phi(b)
            phi = _st.norm.pdf(z)
            x = self.loc + self.scale * (phi[:-1] - phi[1:]) / mass
        else:
            # E[X; a < log X < b] = exp(mu + s^2/2) (Phi(b - s) - Phi(a - s)), in standard units
            s = self.scale
            a, b = z[:-1] - s, z[1:] - s
            # upper tail via survival function to keep precision
            part = np.where(a > 0, ndtr(-a) - ndtr(-b), ndtr(b) - ndtr(a))
            x = math.exp(self.loc + 0.5 * s * s) * part / mass
        return np.maximum(x, self.lower)


LEVEL_RULES = ("mean", "midpoint")


def discretize_parametric(
    spec: ParametricSpec, name: str = "", units: str = "", rule: str = "mean"
) -> BinnedDistribution:
    """Split the truncated family into ``spec.bin_count`` equal-population bins.

    With ``rule="mean"`` (default) each bin holds the conditional mean of its
    slice, which preserves the population mean and keeps the binned Gini
    within a few 1e-6 of the continuous value at 1000 bins. ``rule="midpoint"``
    places each bin at the quantile of its probability midpoint instead; it
    converges to the same limit but more slowly in heavy upper tails.
    """
    n = int(spec.bin_count)
    if rule == "mean":
        levels = spec.bin_means(n)
    elif rule == "midpoint":
        levels = spec.quantile((np.arange(n) + 0.5) / n)
    else:
        raise InvalidSpec(f"unknown level rule {rule!r}; expected one of {LEVEL_RULES}")
    return BinnedDistribution.from_arrays(np.full(n, 1.0 / n), levels, name, units)
