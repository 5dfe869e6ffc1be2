"""Shared fixtures: ladder models are expensive, so they are session-scoped
and disk-cached under .cache/zetaladder (first cold run sweeps the cumulative
|zeta|^2 checkpoints; later runs load the npz in a second or two)."""

import pathlib

import pytest

from zetaladder import LadderConfig, PrimeCounter, build_ladder

CACHE_DIR = pathlib.Path(__file__).resolve().parent.parent / ".cache" / "zetaladder"


@pytest.fixture(scope="session")
def model_small():
    """Ladder over [100, 1.3e4]: covers experiments at T = 1e4."""
    return build_ladder(100.0, 1.3e4, LadderConfig(grid_points=600),
                        cache_dir=CACHE_DIR)


@pytest.fixture(scope="session")
def model_full():
    """Ladder over [100, 1.01e6]: covers the T sweeps up to 1e6 (acceptance grid)."""
    return build_ladder(100.0, 1.01e6, LadderConfig(grid_points=10000),
                        cache_dir=CACHE_DIR)


@pytest.fixture(scope="session")
def prime_counter():
    """Exact prime counts up to 1.2e6 (covers every T used in tests)."""
    return PrimeCounter(limit=1_200_000)
