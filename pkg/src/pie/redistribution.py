"""Reshape a distribution to a target Gini while keeping its total fixed.

The procedure raises the lowest segment by a floor boost ``b`` and then
multiplies every step between consecutive segments, ``x_k - x_{k-1}``, by a
common factor ``f`` chosen so the total resource is unchanged:

    y_k = x_0 + b + f * (x_k - x_0),    f = (mu - x_0 - b) / (mu - x_0)

An outer bisection adjusts ``b`` until the Gini of ``y`` hits the target.
Because ``y`` is an affine image of ``x`` with the same mean, its Gini is
exactly ``f * G0``; the solver checks its answer against that identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from pie.distribution import BinnedDistribution
from pie.errors import NegativeLevelRequired, NoConvergence, PieError, UnreachableTarget
from pie.lorenz import gini, lorenz_curve

MAX_ITER = 10_000
# bound on |achieved - f * G0| from floating-point rounding alone
_CLOSED_FORM_TOL = 1e-9
# near equality the trapezoid Gini is only good to a few ulp of 1
_TOL_FLOOR = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class RedistributionSolution:
    floor_boost: float
    step_factor: float
    result: BinnedDistribution
    achieved_gini: float
    initial_gini: float
    iterations: int


def equalize(dist: BinnedDistribution) -> BinnedDistribution:
    """Give every bin the mean level."""
    return dist.with_levels(np.full(len(dist), dist.mean))


def _reshape(dist: BinnedDistribution, b: float):
    x = dist.levels
    x0 = float(x[0])
    span = dist.mean - x0
    f = (span - b) / span
    y = x0 + b + f * (x - x0)
    np.maximum(y, 0.0, out=y)
    return f, y


def solve_target_gini(dist: BinnedDistribution, target: float, tol: float = 1e-9) -> RedistributionSolution:
    """Find the floor boost and step factor that give ``dist`` the Gini ``target``.

    Parameters
    ----------
    dist : BinnedDistribution
    target : float
        Desired Gini in ``[0, 1)``.
    tol : float
        Accepted distance between achieved and target Gini. Internally the
        bisection runs to ``tol * min(1, target, G0)`` so that the step
        factor also lands within ``tol`` of ``target / G0``.

    Raises
    ------
    UnreachableTarget
        The input is perfectly equal and ``target > 0``.
    NegativeLevelRequired
        Raising inequality that far would push the lowest level below zero.
    NoConvergence
        Bisection did not settle within the iteration cap.
    """
    if not 0 <= target < 1:
        raise PieError(f"target Gini must lie in [0, 1), got {target!r}")
    if not tol > 0:
        raise PieError(f"tol must be positive, got {tol!r}")

    g0 = gini(dist).value
    x0 = float(dist.levels[0])
    span = dist.mean - x0

    def solution(b, f, y, g, it):
        return RedistributionSolution(b, f, dist.with_levels(y), g, g0, it)

    if span <= 0 or g0 == 0:
        if target <= tol:
            return solution(0.0, 1.0, dist.levels.copy(), g0, 0)
        raise UnreachableTarget(f"distribution is perfectly equal; Gini {target} is unreachable")

    if target == 0:
        # closed end of the bracket: every level becomes the mean
        return solution(span, 0.0, np.full(len(dist), dist.mean), 0.0, 1)

    # scaled so f lands within tol of target / G0, and so re-solving a
    # solution for the same target is a no-op
    tol_eff = max(tol * min(1.0, target, g0), _TOL_FLOOR)
    if abs(g0 - target) <= tol_eff:
        return solution(0.0, 1.0, dist.levels.copy(), g0, 0)

    # Gini falls strictly as b grows, so bisect on b
    if target < g0:
        lo, hi = 0.0, span
    else:
        lo, hi = -x0, 0.0
        _, y = _reshape(dist, lo)
        g_max = gini(dist.with_levels(y)).value
        if g_max < target - tol_eff:
            raise NegativeLevelRequired(
                f"target {target} exceeds {g_max:.6f}, the largest Gini reachable "
                "without pushing the lowest level below zero"
            )
        if abs(g_max - target) <= tol_eff:
            f, y = _reshape(dist, lo)
            return _checked(solution(lo, f, y, g_max, 1))

    best = None
    for it in range(1, MAX_ITER + 1):
        b = 0.5 * (lo + hi)
        f, y = _reshape(dist, b)
        g = gini(dist.with_levels(y)).value
        if abs(g - target) <= tol_eff:
            return _checked(solution(b, f, y, g, it))
        if best is None or abs(g - target) < abs(best[3] - target):
            best = (b, f, y, g, it)
        if g > target:
            lo = b
        else:
            hi = b
        if hi - lo <= 4 * np.finfo(float).eps * max(abs(lo), abs(hi), span):
            break
    # bracket collapsed at float resolution: accept the closest iterate if it meets tol
    if best is not None and abs(best[3] - target) <= tol:
        return _checked(solution(*best))
    raise NoConvergence(f"no floor boost within tolerance {tol} after {it} iterations")


def _checked(sol: RedistributionSolution) -> RedistributionSolution:
    expected = sol.step_factor * sol.initial_gini
    if abs(sol.achieved_gini - expected) > _CLOSED_FORM_TOL:
        raise NoConvergence(
            f"achieved Gini {sol.achieved_gini!r} disagrees with step_factor * G0 = {expected!r}"
        )
    return sol


def resample_segments(dist: BinnedDistribution, segments: int) -> BinnedDistribution:
    """Re-bin into ``segments`` equal-population segments.

    Each segment's level is its slice of the Lorenz curve times the total, so
    source bins straddling a segment boundary are split in proportion to the
    population on either side. The total resource is unchanged.
    """
    if segments < 1:
        raise PieError(f"segments must be >= 1, got {segments}")
    curve = lorenz_curve(dist)
    edges = np.linspace(0.0, 1.0, segments + 1)
    cum = curve(edges)
    levels = np.maximum(np.diff(cum), 0.0) * dist.mean * segments
    levels = np.maximum.accumulate(levels)  # no ulp-level dips from interpolation
    return BinnedDistribution.from_arrays(np.full(segments, 1.0 / segments), levels, dist.name, dist.units)


@dataclass(frozen=True, eq=False)
class ScenarioTable:
    """Per-segment levels under the current, equal and target-Gini scenarios."""

    resource: str
    pop_share: np.ndarray
    current: np.ndarray
    equal: np.ndarray
    target: np.ndarray
    target_gini: float
    solution: RedistributionSolution

    @property
    def segments(self) -> int:
        return self.pop_share.size

    @property
    def rows(self) -> list[tuple[int, float, float, float, float]]:
        return [
            (k + 1, float(w), float(c), float(e), float(t))
            for k, (w, c, e, t) in enumerate(zip(self.pop_share, self.current, self.equal, self.target))
        ]

    def totals(self) -> tuple[float, float, float]:
        return tuple(math.fsum(self.pop_share * col) for col in (self.current, self.equal, self.target))


def _one_table(resource: str, dist: BinnedDistribution, target: float, segments: int, tol: float) -> ScenarioTable:
    seg = resample_segments(dist, segments)
    sol = solve_target_gini(seg, target, tol)
    return ScenarioTable(
        resource=resource,
        pop_share=seg.shares,
        current=seg.levels,
        equal=equalize(seg).levels,
        target=sol.result.levels,
        target_gini=target,
        solution=sol,
    )


def scenario_table(
    income: BinnedDistribution,
    wealth: BinnedDistribution,
    target: float = 0.5,
    segments: int = 100,
    tol: float = 1e-9,
) -> tuple[ScenarioTable, ScenarioTable]:
    """Income and wealth tables for ``segments`` representative people.

    Row ``k`` of the income table is treated as the same person as row ``k``
    of the wealth table (both ascending).
    """
    if segments < 2:
        raise PieError(f"segments must be >= 2, got {segments}")
    if not 0 <= target < 1:
        raise PieError(f"target Gini must lie in [0, 1), got {target!r}")
    return (
        _one_table("income", income, target, segments, tol),
        _one_table("wealth", wealth, target, segments, tol),
    )
