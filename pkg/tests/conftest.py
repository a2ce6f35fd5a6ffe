from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from pie.distribution import BinnedDistribution

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "data"

# acceptance results collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_dir():
    return DATA_DIR


def pairwise_oracle(shares, levels) -> float:
    """Plain double loop over ordered pairs; deliberately shares nothing with pie.lorenz."""
    shares = [float(w) for w in shares]
    levels = [float(x) for x in levels]
    mu = sum(w * x for w, x in zip(shares, levels))
    acc = 0.0
    for wi, xi in zip(shares, levels):
        for wj, xj in zip(shares, levels):
            acc += wi * wj * abs(xi - xj)
    return acc / (2 * mu)


def random_distribution(rng: np.random.Generator, max_bins: int = 2000) -> BinnedDistribution:
    """Uneven shares, heavy-tailed levels, with a random fraction of zero levels."""
    n = int(rng.integers(1, max_bins + 1))
    shares = rng.gamma(0.7, size=n) + 1e-6
    shares /= shares.sum()
    levels = rng.lognormal(0.0, rng.uniform(0.1, 2.0), size=n) * 10 ** rng.uniform(-2, 4)
    zero_frac = rng.choice([0.0, 0.0, 0.1, 0.5, 0.9])
    levels[rng.random(n) < zero_frac] = 0.0
    if not np.any(levels > 0):
        levels[-1] = 1.0
    return BinnedDistribution.from_arrays(shares, levels)


@st.composite
def distributions(draw, max_bins=40):
    n = draw(st.integers(1, max_bins))
    raw = draw(st.lists(st.floats(0.01, 100.0), min_size=n, max_size=n))
    levels = draw(st.lists(
        st.one_of(st.just(0.0), st.floats(0.0, 1e6, allow_subnormal=False)), min_size=n, max_size=n,
    ))
    if not any(x > 0 for x in levels):
        levels[-1] = 1.0
    shares = np.array(raw) / sum(raw)
    return BinnedDistribution.from_arrays(shares, levels)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
