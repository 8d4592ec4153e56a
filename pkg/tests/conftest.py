import pathlib

import pytest

from schottky_lab import load_schottky
from schottky_lab.bergman import BergmanBasis

REPO = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"

# measured once on the F1 fixture at M = 16 (bowen_dim, residual < 1e-13)
F1_DELTA = 0.3438088085879116


@pytest.fixture(scope="session")
def f1():
    return load_schottky(FIXTURES / "f1.json")


@pytest.fixture(scope="session")
def basis16(f1):
    return BergmanBasis(f1, degree=16)


@pytest.fixture(scope="session")
def basis12(f1):
    return BergmanBasis(f1, degree=12)


@pytest.fixture(scope="session")
def delta_f1():
    return F1_DELTA
