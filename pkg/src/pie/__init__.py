"""Lorenz curves, Gini indexes and target-Gini redistribution for binned
resource distributions."""

from pie.distribution import (
    BinnedDistribution,
    DistributionStats,
    ParametricSpec,
    QuantileTable,
    ResourceBin,
    affine_transform,
    build_binned,
    discretize_parametric,
    from_quantile_table,
    stats,
)
from pie.errors import PieError, SolverError
from pie.lorenz import GiniResult, LorenzCurve, gini, lorenz_curve, top_share
from pie.redistribution import (
    RedistributionSolution,
    ScenarioTable,
    equalize,
    resample_segments,
    scenario_table,
    solve_target_gini,
)
from pie.sampler import SampleSet, analytic_gini, empirical_gini, sample_population

__all__ = [
    "BinnedDistribution",
    "DistributionStats",
    "GiniResult",
    "LorenzCurve",
    "ParametricSpec",
    "PieError",
    "QuantileTable",
    "RedistributionSolution",
    "ResourceBin",
    "SampleSet",
    "ScenarioTable",
    "SolverError",
    "affine_transform",
    "analytic_gini",
    "build_binned",
    "discretize_parametric",
    "empirical_gini",
    "equalize",
    "from_quantile_table",
    "gini",
    "lorenz_curve",
    "resample_segments",
    "sample_population",
    "scenario_table",
    "solve_target_gini",
    "stats",
    "top_share",
]
