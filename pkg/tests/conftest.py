"""
Shared fixtures for the orbital-rmt test suite.
"""

import pytest

from orbital_rmt.ensembles import RngStream
from orbital_rmt.types import LatticeBox, SymmetryClass


@pytest.fixture
def rng():
    """A fixed stream so every test is reproducible."""
    return RngStream(12345)


@pytest.fixture
def box_1d():
    return LatticeBox(d=1, L=2)


@pytest.fixture
def box_2d():
    return LatticeBox(d=2, L=1)


@pytest.fixture(params=[SymmetryClass.ORTHOGONAL, SymmetryClass.UNITARY], ids=str)
def symmetry(request):
    """Run a test once per symmetry class."""
    return request.param
