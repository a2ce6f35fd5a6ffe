"""Seeded synthetic populations and closed-form Gini values.

The random stream is pinned so that any implementation can reproduce it:

* uniforms come from SplitMix64. Draw ``i`` (counting from 1) is
  ``mix(seed + i * 0x9E3779B97F4A7C15 mod 2**64)``, where ``mix`` is the
  standard SplitMix64 finalizer, mapped to ``[0, 1)`` as ``(z >> 11) * 2**-53``;
* standard normals come from Box-Muller on consecutive uniform pairs
  ``(u1, u2)``: ``r = sqrt(-2 ln(1 - u1))``, emitting ``r cos(2 pi u2)`` then
  ``r sin(2 pi u2)``;
* a truncated family keeps, in stream order, the variates at or above the
  lower bound (rejection). When the bound removes more than half the mass the
  sampler switches to inverse-CDF on the uniform stream instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from pie.distribution import BinnedDistribution, ParametricSpec
from pie.errors import AllZero, InvalidSpec, PieError, TruncationSignificant
from pie.lorenz import GiniResult, gini

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1
NEGLIGIBLE_TRUNCATION = 1e-6
_CHUNK = 1 << 20


def splitmix64(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start+1 .. start+count`` of the SplitMix64 stream for ``seed``."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + idx * GOLDEN_GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, start: int, count: int) -> np.ndarray:
    return (splitmix64(seed, start, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def standard_normals(seed: int, start_pair: int, pairs: int) -> np.ndarray:
    """``2 * pairs`` standard normals, beginning at Box-Muller pair ``start_pair``."""
    u = uniforms(seed, 2 * start_pair, 2 * pairs)
    r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
    theta = 2.0 * np.pi * u[1::2]
    out = np.empty(2 * pairs)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out


@dataclass(frozen=True, eq=False)
class SampleSet:
    values: np.ndarray
    seed: int
    spec: ParametricSpec

    def __len__(self) -> int:
        return self.values.size


def sample_population(spec: ParametricSpec, n: int, seed: int) -> SampleSet:
    """``n`` independent draws from the truncated family described by ``spec``.

    The result is a pure function of ``(spec, n, seed)``.
    """
    if not isinstance(spec, ParametricSpec):
        raise InvalidSpec("spec must be a ParametricSpec")
    if n < 1:
        raise PieError(f"n must be >= 1, got {n}")
    if not 0 <= seed < 2**64:
        raise PieError("seed must be an unsigned 64-bit integer")

    if spec.scale == 0:
        values = np.full(n, spec.point_value)
    elif spec.lower_cdf > 0.5:
        values = spec.quantile(uniforms(seed, 0, n))
    else:
        values = _rejection(spec, n, seed)
    values.flags.writeable = False
    return SampleSet(values, seed, spec)


def _transform(spec: ParametricSpec, z: np.ndarray) -> np.ndarray:
    if spec.family == "normal":
        return spec.loc + spec.scale * z
    return np.exp(spec.loc + spec.scale * z)


def _rejection(spec: ParametricSpec, n: int, seed: int) -> np.ndarray:
    kept = []
    have = 0
    pair = 0
    while have < n:
        # over-draw slightly for the expected rejections
        want = n - have
        pairs = min(_CHUNK, max(16, int(want / (2.0 * (1.0 - spec.lower_cdf)) * 1.01) + 8))
        x = _transform(spec, standard_normals(seed, pair, pairs))
        pair += pairs
        x = x[x >= spec.lower]
        kept.append(x[:want])
        have += min(x.size, want)
    return np.concatenate(kept)


def empirical_gini(samples: SampleSet | np.ndarray) -> GiniResult:
    """Trapezoid Gini of the samples treated as equally weighted individuals."""
    values = samples.values if isinstance(samples, SampleSet) else np.asarray(samples, dtype=np.float64)
    if values.size == 0:
        raise AllZero("no samples")
    if not np.any(values > 0):
        raise AllZero("every sample is zero")
    n = values.size
    return gini(BinnedDistribution.from_arrays(np.full(n, 1.0 / n), values), "trapezoid")


def analytic_gini(spec: ParametricSpec) -> float:
    """Closed-form Gini of the untruncated family.

    Normal: ``sd / (mean * sqrt(pi))``. Lognormal: ``2 Phi(sigma / sqrt 2) - 1``.
    Refuses specs whose truncation removes 1e-6 or more of the mass.
    """
    if spec.scale == 0:
        return 0.0
    if spec.lower_cdf >= NEGLIGIBLE_TRUNCATION:
        raise TruncationSignificant(
            f"truncation at {spec.lower} removes {spec.lower_cdf:.3g} of the mass; closed form invalid"
        )
    if spec.family == "normal":
        return spec.scale / (spec.loc * math.sqrt(math.pi))
    return float(2.0 * ndtr(spec.scale / math.sqrt(2.0)) - 1.0)
