"""Cubic invariant: evaluator agreement, analytic gradient, and the
scale-invariant ratio."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylpinch.catalog import (
    einstein_product_riemann,
    fubini_study_riemann,
    q_ratio_bound,
    sphere,
)
from weylpinch.constraints import WeylCoords, embed, weyl_basis
from weylpinch.optimize import philox_generator, random_unit_coords
from weylpinch.qfunc import (
    fd_directional,
    fd_gradient,
    q_gradient,
    q_report,
    q_value,
    q_value_direct,
    ratio,
    ratio_gradient,
)
from weylpinch.tensor import Tensor4, frame_rotate, norm_sq, scalar, weyl_from_riemann


def _random_weyl(basis, seed):
    rng = philox_generator(seed)
    return embed(random_unit_coords(rng, basis.m), basis)


def test_einsum_matches_direct_sum(basis4):
    for seed in range(5):
        w = _random_weyl(basis4, seed)
        assert q_value(w) == pytest.approx(q_value_direct(w), rel=1e-12)


def test_einsum_matches_direct_sum_dim5(basis5):
    w = _random_weyl(basis5, 7)
    assert q_value(w) == pytest.approx(q_value_direct(w), rel=1e-12)


def test_q_of_zero_is_zero():
    assert q_value(Tensor4.zeros(4)) == 0.0


@given(st.floats(-3.0, 3.0))
@settings(max_examples=20, deadline=None)
def test_cubic_homogeneity(t):
    w = _random_weyl(weyl_basis(4), 11)
    scaled = Tensor4(4, t * w.data)
    assert q_value(scaled) == pytest.approx(t**3 * q_value(w), abs=1e-9)


def test_orthogonal_invariance(basis4, rng):
    w = _random_weyl(basis4, 3)
    for _ in range(5):
        o, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        assert abs(q_value(frame_rotate(w, o)) - q_value(w)) < 1e-8


def test_euler_identity(basis4, basis5):
    # <grad q, W> = 3 q(W) for the cubic form
    for basis in (basis4, basis5):
        for seed in range(10):
            w = _random_weyl(basis, seed)
            g = q_gradient(w)
            assert float(np.dot(g.data, w.data)) == pytest.approx(
                3.0 * q_value(w), abs=1e-9
            )


def test_gradient_matches_componentwise_differences(basis4):
    w = _random_weyl(basis4, 5)
    g = q_gradient(w).data
    fd = fd_gradient(w, h=1e-5).data
    scale = max(np.abs(fd).max(), 1.0)
    assert np.abs(g - fd).max() / scale < 1e-6


@pytest.mark.parametrize("fix", ["basis4", "basis5", "basis6"])
def test_gradient_matches_directional_differences(fix, request):
    basis = request.getfixturevalue(fix)
    worst = 0.0
    for seed in range(25):
        rng = philox_generator(seed)
        w = embed(random_unit_coords(rng, basis.m), basis)
        g = q_gradient(w)
        for _ in range(4):
            d = embed(random_unit_coords(rng, basis.m), basis)
            analytic = float(np.dot(g.data, d.data))
            numeric = fd_directional(w, d, h=1e-5)
            worst = max(worst, abs(analytic - numeric)
                        / max(abs(numeric), abs(analytic), 1e-12))
    assert worst < 1e-6


def test_locally_symmetric_identity():
    # Einstein product of round spheres is locally symmetric: n q = S |W|^2
    r = einstein_product_riemann([sphere(2), sphere(4)])
    w = weyl_from_riemann(r)
    assert 6.0 * q_value(w) == pytest.approx(
        scalar(r) * norm_sq(w), rel=1e-12
    )


def test_cp2_ratio_is_sqrt6_over_4():
    w = weyl_from_riemann(fubini_study_riemann(2, 4.0))
    assert ratio(w) == pytest.approx(math.sqrt(6.0) / 4.0, abs=1e-12)


def test_random_ratios_respect_dimensional_bound(basis4, basis5):
    for basis in (basis4, basis5):
        bound = q_ratio_bound(basis.dim)
        for seed in range(20):
            assert abs(ratio(_random_weyl(basis, seed))) <= bound + 1e-9


def test_ratio_rejects_zero_tensor():
    with pytest.raises(ValueError):
        ratio(Tensor4.zeros(4))


def test_q_report_fields(basis4):
    w = _random_weyl(basis4, 2)
    rep = q_report(w)
    assert rep.norm == pytest.approx(1.0, abs=1e-12)
    assert rep.ratio == pytest.approx(rep.q / rep.norm**3, rel=1e-12)


def test_ratio_gradient_is_tangent(basis4):
    coords = WeylCoords(_random_weyl(basis4, 9).data @ basis4.vectors.T)
    g = ratio_gradient(coords, basis4)
    # scale invariance forces orthogonality to the base point
    assert abs(float(np.dot(g.values, coords.values))) < 1e-10
