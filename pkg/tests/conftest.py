from pathlib import Path

import numpy as np
import pytest

from zolldisks.dataflows.config import reset_config
from zolldisks.dataflows.spec_files import load_spec, standard_spec

SPECS_DIR = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture(autouse=True)
def fresh_config():
    reset_config()
    yield
    reset_config()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def standard():
    """Zero field: phi is the antipodal map, N the standard RP^2."""
    return standard_spec(scale=0.0)


@pytest.fixture
def generic():
    """Quadratic and cubic terms with coefficients at most 0.1, scale 1."""
    return load_spec(SPECS_DIR / "generic_0.1.json")


@pytest.fixture
def degenerate():
    """Coefficients 20 integrated with four RK4 steps: phi is not an involution."""
    return load_spec(SPECS_DIR / "degenerate.json")


def random_p1(rng, n):
    v = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)
