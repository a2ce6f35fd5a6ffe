import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pie.distribution import (
    BinnedDistribution,
    ParametricSpec,
    QuantileTable,
    ResourceBin,
    affine_transform,
    build_binned,
    discretize_parametric,
    from_quantile_table,
    stats,
)
from pie.errors import (
    AllZeroLevels,
    BinCountZero,
    EmptyDistribution,
    InvalidSpec,
    InvalidTable,
    NegativeLevel,
    NegativeResultLevel,
    NonPositiveShare,
    ShareSumOutOfTolerance,
)
from pie.lorenz import gini, top_share

from conftest import distributions

QUARTERS = [(0.25, 1), (0.25, 2), (0.25, 3), (0.25, 4)]


def test_build_mean():
    d = build_binned(QUARTERS, name="q", units="u")
    assert d.mean == 2.5
    assert d.name == "q" and d.units == "u"
    assert d.bins == [ResourceBin(0.25, float(x)) for x in (1, 2, 3, 4)]


def test_build_sorts():
    d = build_binned([(0.5, 10), (0.5, 5)])
    assert d.bins == [(0.5, 5.0), (0.5, 10.0)]


def test_build_zero_levels_renormalized():
    d = build_binned([(0.3333333, 0), (0.3333333, 0), (0.3333334, 9)])
    assert d.shares.sum() == pytest.approx(1.0, abs=1e-15)
    assert d.mean == pytest.approx(0.3333334 * 9, abs=1e-12)
    assert d.mean == pytest.approx(3.0, abs=1e-6)


def test_ties_keep_input_order():
    d = build_binned([(0.2, 5), (0.3, 1), (0.5, 5)])
    assert list(d.shares) == [0.3, 0.2, 0.5]


@pytest.mark.parametrize("bins, exc", [
    ([], EmptyDistribution),
    ([(0.5, -1), (0.5, 2)], NegativeLevel),
    ([(0.0, 1), (1.0, 2)], NonPositiveShare),
    ([(0.5, 1), (0.6, 2)], ShareSumOutOfTolerance),
    ([(0.5, 1), (0.499998, 2)], ShareSumOutOfTolerance),
    ([(0.5, 0), (0.5, 0)], AllZeroLevels),
])
def test_build_errors(bins, exc):
    with pytest.raises(exc):
        build_binned(bins)


def test_share_tolerance_accepts_rounding():
    d = build_binned([(0.5, 1), (0.4999995, 2)])
    assert np.isclose(d.shares.sum(), 1.0, atol=1e-15)


def test_immutable():
    d = build_binned(QUARTERS)
    with pytest.raises(ValueError):
        d.levels[0] = 7.0
    with pytest.raises(AttributeError):
        d.name = "x"


@pytest.mark.parametrize("bins, mean, lo, hi", [
    (QUARTERS, 2.5, 1, 4),
    ([(0.75, 0), (0.25, 100)], 25, 0, 100),
    ([(0.99, 0.54 / 0.99), (0.01, 46)], 1.0, 0.54 / 0.99, 46),
])
def test_stats(bins, mean, lo, hi):
    s = stats(build_binned(bins))
    assert s.mean == pytest.approx(mean, abs=1e-12)
    assert s.total == pytest.approx(mean, abs=1e-12)
    assert (s.min, s.max) == (pytest.approx(lo), pytest.approx(hi))


@given(distributions())
def test_build_idempotent(d):
    again = build_binned(d.bins)
    assert np.array_equal(again.shares, d.shares)
    assert np.array_equal(again.levels, d.levels)


@given(st.lists(st.floats(0.01, 10.0), min_size=2, max_size=30))
def test_renormalization_preserves_ratios(raw):
    raw = np.array(raw)
    scaled = raw / raw.sum() * (1 + 5e-7)
    d = BinnedDistribution.from_arrays(scaled, np.arange(1, raw.size + 1))
    np.testing.assert_allclose(d.shares / d.shares[0], raw / raw[0], rtol=1e-12)


# -- quantile tables --------------------------------------------------------

def test_quantile_midpoints():
    t = QuantileTable(((0, 0), (50, 10), (100, 20)))
    d = from_quantile_table(t, 2)
    assert d.bins == [(0.5, 5.0), (0.5, 15.0)]


@pytest.mark.parametrize("bins", [1, 7, 100, 1000])
def test_quantile_constant_table(bins):
    d = from_quantile_table(QuantileTable(((0, 3.5), (100, 3.5))), bins)
    assert np.all(d.levels == 3.5)
    assert gini(d).value == 0.0


@pytest.mark.parametrize("q, Q", [(10.0, 1000.0), (1.0, 500.0), (50.0, 50_000.0)])
def test_quantile_top_percent_isolated(q, Q):
    d = from_quantile_table(QuantileTable(((0, 0), (99, q), (100, Q))), 100)
    # integrate the piecewise-linear quantile function by hand
    bottom = 0.99 * (0 + q) / 2
    top = 0.01 * (q + Q) / 2
    assert top_share(d, 0.01) == pytest.approx(top / (bottom + top), rel=1e-12)
    assert d.levels[-1] == pytest.approx((q + Q) / 2)


@pytest.mark.parametrize("points", [
    ((0, 0), (50, 10)),                 # does not end at 100
    ((0, 0), (60, 5), (50, 6), (100, 7)),
    ((0, 5), (50, 3), (100, 7)),         # decreasing level
    ((0, 0),),
    ((-1, 0), (100, 1)),
])
def test_quantile_invalid(points):
    with pytest.raises(InvalidTable):
        QuantileTable(points)


def test_quantile_bin_count_zero():
    with pytest.raises(BinCountZero):
        from_quantile_table(QuantileTable(((0, 0), (100, 1))), 0)


# -- parametric --------------------------------------------------------------

def test_parametric_normal_iq():
    d = discretize_parametric(ParametricSpec("normal", 100, 15, 0, 1000))
    assert len(d) == 1000
    # closed form sd / (mean sqrt(pi)) = 0.0846284...
    assert gini(d).value == pytest.approx(0.0846, abs=1e-3)


def test_parametric_height():
    g = gini(discretize_parametric(ParametricSpec("normal", 171, 7.1))).value
    assert g == pytest.approx(0.023, abs=1e-3)
    assert 0.02 <= g <= 0.03


@pytest.mark.parametrize("family, loc", [("normal", 42.0), ("lognormal", 1.5)])
def test_parametric_degenerate(family, loc):
    d = discretize_parametric(ParametricSpec(family, loc, 0.0))
    assert np.ptp(d.levels) == 0
    assert gini(d).value == 0.0


def test_parametric_truncation_clamps():
    spec = ParametricSpec("normal", 1.0, 2.0, lower=0.5, bin_count=200)
    d = discretize_parametric(spec)
    assert d.levels[0] >= 0.5
    assert spec.lower_cdf == pytest.approx(0.40129, abs=1e-5)


@pytest.mark.parametrize("kw", [
    dict(family="pareto", loc=1, scale=1),
    dict(family="normal", loc=1, scale=-1),
    dict(family="normal", loc=1, scale=1, bin_count=1),
    dict(family="normal", loc=1, scale=1, lower=-1),
    dict(family="normal", loc=-5, scale=0),
    dict(family="normal", loc=1, scale=float("nan")),
])
def test_parametric_invalid(kw):
    with pytest.raises(InvalidSpec):
        ParametricSpec(**kw)


@pytest.mark.parametrize("spec, closed", [
    (ParametricSpec("normal", 100, 15), 15 / (100 * np.sqrt(np.pi))),
    (ParametricSpec("lognormal", 0, 1), 0.5204998778),
    (ParametricSpec("lognormal", 3, 0.5), 0.2763263902),
])
def test_parametric_converges(spec, closed):
    counts = [125, 250, 500, 1000, 2000, 4000, 8000]
    gs = [gini(discretize_parametric(ParametricSpec(spec.family, spec.loc, spec.scale, bin_count=n))).value
          for n in counts]
    steps = np.abs(np.diff(gs))
    assert np.all(np.diff(steps) < 0)
    errs = np.abs(np.array(gs) - closed)
    assert np.all(np.diff(errs) < 0)
    assert errs[-1] < errs[0] / 4


def test_lognormal_closed_form_reference():
    # 2 Phi(s / sqrt 2) - 1 via erf: Phi(z) = (1 + erf(z / sqrt 2)) / 2
    from math import erf
    assert erf(0.5) == pytest.approx(0.5204998778, abs=1e-10)
    assert erf(0.25) == pytest.approx(0.2763263902, abs=1e-10)


# -- affine -------------------------------------------------------------------

def test_affine_identity():
    d = build_binned(QUARTERS)
    assert affine_transform(d, 1, 0) == d


def test_affine_redistribution_example():
    d = affine_transform(build_binned(QUARTERS), 0.5, 1.25)
    assert list(d.levels) == [1.75, 2.25, 2.75, 3.25]
    assert list(d.shares) == [0.25] * 4


def test_affine_unit_change_keeps_gini(data_dir):
    d = discretize_parametric(ParametricSpec("normal", 171, 7.1))
    inches = affine_transform(d, 1 / 2.54, 0)
    assert gini(inches).value == pytest.approx(gini(d).value, abs=1e-12)
    assert gini(affine_transform(d, 2.54, 0)).value == pytest.approx(gini(d).value, abs=1e-12)


def test_affine_errors():
    d = build_binned(QUARTERS)
    with pytest.raises(NegativeResultLevel):
        affine_transform(d, 1, -2)
    with pytest.raises(ValueError):
        affine_transform(d, 0, 1)


@given(distributions(), st.floats(0.01, 100), st.floats(0, 50), st.floats(0.01, 100), st.floats(0, 50))
@settings(max_examples=200)
def test_affine_composes(d, a1, c1, a2, c2):
    lhs = affine_transform(affine_transform(d, a1, c1), a2, c2)
    rhs = affine_transform(d, a2 * a1, a2 * c1 + c2)
    np.testing.assert_allclose(lhs.levels, rhs.levels, rtol=1e-12, atol=1e-12 * max(1.0, rhs.levels.max()))
    assert np.array_equal(lhs.shares, d.shares)


def test_bin_means_preserve_mean():
    for spec, mean in [(ParametricSpec("normal", 100, 15), 100.0),
                       (ParametricSpec("lognormal", 0, 1), np.exp(0.5))]:
        assert discretize_parametric(spec).mean == pytest.approx(mean, rel=1e-9)


def test_midpoint_rule_available():
    spec = ParametricSpec("lognormal", 0, 1)
    mid = discretize_parametric(spec, rule="midpoint")
    assert mid.levels[0] == pytest.approx(spec.quantile(0.0005))
    # midpoints undershoot the heavy upper tail, bin means do not
    assert gini(mid).value < gini(discretize_parametric(spec)).value < 0.5204998778
    with pytest.raises(InvalidSpec):
        discretize_parametric(spec, rule="median")
