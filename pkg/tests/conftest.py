"""
pytest configuration and shared fixtures
"""

import os
import tempfile
from pathlib import Path

import pytest

# Test environment: single worker, quiet logging
os.environ["QFI_NOISE_WORKERS"] = "1"
os.environ["QFI_NOISE_LOG_LEVEL"] = "WARNING"
os.environ["QFI_NOISE_EIGENSOLVER"] = "jacobi"

TEST_SEED = 20190101


@pytest.fixture
def temp_config_dir():
    """Temporary config directory"""
    with tempfile.TemporaryDirectory() as temp_dir:
        config_dir = Path(temp_dir) / "config"
        config_dir.mkdir()
        yield config_dir


@pytest.fixture
def seed():
    return TEST_SEED


@pytest.fixture
def catalog():
    from config.settings import get_ensemble_catalog

    return get_ensemble_catalog()


@pytest.fixture
def pauli_sphere(catalog):
    return catalog.get_ensemble("pauli_sphere")


@pytest.fixture
def spin1_sphere(catalog):
    return catalog.get_ensemble("spin1_sphere")


@pytest.fixture
def gellmann_sphere(catalog):
    return catalog.get_ensemble("gellmann_sphere")


@pytest.fixture
def ghz4():
    from src.states import StateFactory

    return StateFactory.create("ghz4_2")


@pytest.fixture
def executor():
    from src.utils import MonteCarloExecutor

    return MonteCarloExecutor(workers=1, chunk_size=64)


@pytest.fixture
def results_dir(tmp_path):
    """Output directory for CLI runs"""
    out = tmp_path / "results"
    out.mkdir()
    return out
