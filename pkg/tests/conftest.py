"""Shared fixtures: cached constraint bases (expensive for n=6) and a
seeded generator for random curvature data."""

import numpy as np
import pytest

from weylpinch.constraints import weyl_basis


@pytest.fixture(scope="session")
def basis4():
    return weyl_basis(4)


@pytest.fixture(scope="session")
def basis5():
    return weyl_basis(5)


@pytest.fixture(scope="session")
def basis6():
    return weyl_basis(6)


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.Philox(key=20240817))
