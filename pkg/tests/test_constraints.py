"""Constraint system and nullspace basis for the algebraic Weyl
symmetries."""

import numpy as np
import pytest

from weylpinch.catalog import product_riemann, sphere, squashed_cp3_weyl
from weylpinch.constraints import (
    WeylCoords,
    build_constraints,
    constraint_rank,
    embed,
    is_algebraic_weyl,
    project,
    weyl_basis,
    weyl_dimension,
)
from weylpinch.tensor import Tensor4, weyl_from_riemann


def test_weyl_dimension_formula():
    assert weyl_dimension(3) == 0
    assert weyl_dimension(4) == 10
    assert weyl_dimension(5) == 35
    assert weyl_dimension(6) == 84
    assert weyl_dimension(7) == 168
    for n in range(3, 10):
        assert weyl_dimension(n) == n * (n + 1) * (n + 2) * (n - 3) // 12


def test_constraints_vanish_on_true_weyl():
    w = weyl_from_riemann(product_riemann([sphere(2), sphere(2)]))
    c = build_constraints(4)
    assert c.residual(w) < 1e-12
    assert build_constraints(6).residual(squashed_cp3_weyl()) < 1e-12


def test_constraints_reject_generic_tensor(rng):
    c = build_constraints(4)
    assert c.residual(Tensor4(4, rng.standard_normal(256))) > 0.1


@pytest.mark.parametrize("n", [4, 5])
def test_constraint_rank_complements_nullity(n):
    assert constraint_rank(build_constraints(n)) == n**4 - weyl_dimension(n)


@pytest.mark.parametrize("fix", ["basis4", "basis5", "basis6"])
def test_basis_orthonormal_and_feasible(fix, request):
    basis = request.getfixturevalue(fix)
    v = basis.vectors
    assert v.shape == (weyl_dimension(basis.dim), basis.dim**4)
    gram = v @ v.T
    assert np.abs(gram - np.eye(basis.m)).max() < 1e-12
    for row in v:  # cached dense matrix: one row check per basis vector
        assert is_algebraic_weyl(Tensor4(basis.dim, np.array(row)),
                                 tol=1e-12).passed


def test_embed_project_roundtrip(basis4, rng):
    coords = WeylCoords(rng.standard_normal(basis4.m))
    w = embed(coords, basis4)
    back = project(w, basis4)
    assert np.abs(back.values - coords.values).max() < 1e-12
    # embedding is an isometry
    assert np.linalg.norm(w.data) == pytest.approx(
        np.linalg.norm(coords.values), rel=1e-12
    )


def test_project_embed_recovers_true_weyl(basis4):
    w = weyl_from_riemann(product_riemann([sphere(2), sphere(2)]))
    again = embed(project(w, basis4), basis4)
    assert np.abs(again.data - w.data).max() < 1e-10


def test_is_algebraic_weyl(basis6, rng):
    report = is_algebraic_weyl(squashed_cp3_weyl())
    assert report.passed
    assert report.max_residual < 1e-12
    bad = is_algebraic_weyl(Tensor4(6, rng.standard_normal(6**4)))
    assert not bad.passed


def test_weyl_basis_is_cached():
    assert weyl_basis(4) is weyl_basis(4)
