"""Pytest configuration and shared fixtures."""

import numpy as np
import pytest

from firecast.config import ArchitectureConfig
from firecast.fcm import SANITARY_MAP_PATH, fcm_file_load
from firecast.nn import init_model

# Sanitary-condition weights, row = cause, column = effect
SANITARY_WEIGHTS = [
    [0.0, 0.0, 0.6, 0.9, 0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.7, 0.0, 0.0, 0.9, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.9],
    [0.0, 0.0, 0.0, 0.0, 0.0, -0.9, 0.9],
    [-0.3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.8, 0.0],
]


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "benchmark: slow end-to-end training benchmark")


def pytest_addoption(parser):
    """Add pytest command line options."""
    parser.addoption(
        "--run-benchmarks",
        action="store_true",
        default=False,
        help="Run slow training benchmarks (marked with benchmark)",
    )


def pytest_collection_modifyitems(config, items):
    """Skip benchmark tests unless explicitly requested."""
    if config.getoption("--run-benchmarks"):
        return

    skip_benchmark = pytest.mark.skip(reason="use --run-benchmarks to run training benchmarks")
    for item in items:
        if "benchmark" in item.keywords:
            item.add_marker(skip_benchmark)


TINY_ARCH = ArchitectureConfig(input_height=6, input_width=6, filters=2, kernel=3, pool_window=2, hidden_units=8)
SMALL_ARCH = ArchitectureConfig(input_height=8, input_width=8, filters=2, kernel=3, pool_window=2, hidden_units=8)


@pytest.fixture
def tiny_arch():
    """6x6 input, 2 filters, 8 hidden units: cheap enough for finite differences."""
    return TINY_ARCH


@pytest.fixture
def small_model():
    """Seeded 8x8 model."""
    return init_model(SMALL_ARCH, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sanitary_map():
    """The shipped sanitary-condition map."""
    return fcm_file_load(SANITARY_MAP_PATH)
