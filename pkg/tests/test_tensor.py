"""Tensor container, Kulkarni-Nomizu product, and the Ricci/Weyl
decomposition."""

import math
from itertools import product as iproduct

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylpinch.catalog import (
    fubini_study_riemann,
    product_riemann,
    space_form_riemann,
    sphere,
)
from weylpinch.tensor import (
    Sym2,
    Tensor4,
    curvature_symmetry_residual,
    flatten_index,
    frame_rotate,
    inner,
    kulkarni_nomizu,
    norm_sq,
    pad_tensor,
    ricci,
    scalar,
    unflatten_index,
    weyl_from_riemann,
)


@given(st.integers(2, 7), st.data())
def test_flatten_unflatten_roundtrip(n, data):
    idx = tuple(data.draw(st.integers(1, n)) for _ in range(4))
    x = flatten_index(*idx, n)
    assert 0 <= x < n**4
    assert unflatten_index(x, n) == idx


def test_flatten_matches_c_order():
    n = 4
    arr = np.arange(n**4, dtype=float).reshape(n, n, n, n)
    t = Tensor4.from_array(arr)
    for i, j, k, l in iproduct(range(1, n + 1), repeat=4):
        assert t.get(i, j, k, l) == arr[i - 1, j - 1, k - 1, l - 1]


def test_flatten_rejects_out_of_range():
    with pytest.raises(ValueError):
        flatten_index(0, 1, 1, 1, 4)
    with pytest.raises(ValueError):
        flatten_index(1, 1, 1, 5, 4)
    with pytest.raises(ValueError):
        unflatten_index(4**4, 4)


def test_tensor4_validation():
    with pytest.raises(ValueError):
        Tensor4(1, np.zeros(1))
    with pytest.raises(ValueError):
        Tensor4(4, np.zeros(17))
    t = Tensor4.zeros(4)
    with pytest.raises(ValueError):
        t.data[0] = 1.0  # frozen storage


def test_sym2_requires_exact_symmetry():
    m = np.eye(3)
    m[0, 1] = 1e-18
    with pytest.raises(ValueError):
        Sym2(3, m)


def test_kulkarni_nomizu_against_componentwise(rng):
    n = 4
    a = rng.standard_normal((n, n))
    b = rng.standard_normal((n, n))
    h = Sym2(n, (a + a.T) / 2)
    k = Sym2(n, (b + b.T) / 2)
    got = kulkarni_nomizu(h, k).as_array()
    hm, km = h.data, k.data
    for i, j, p, q in iproduct(range(n), repeat=4):
        want = (hm[i, p] * km[j, q] - hm[i, q] * km[j, p]
                + hm[j, q] * km[i, p] - hm[j, p] * km[i, q])
        assert got[i, j, p, q] == pytest.approx(want, abs=1e-12)


def test_kulkarni_nomizu_has_curvature_symmetries(rng):
    a = rng.standard_normal((5, 5))
    h = Sym2(5, (a + a.T) / 2)
    t = kulkarni_nomizu(h, Sym2.identity(5))
    assert curvature_symmetry_residual(t) < 1e-12


def test_space_form_invariants():
    # unit round S^k: R_ijij = 1 off-diagonal, scalar k(k-1), |Riem|^2 = 2k(k-1)
    for k in (2, 3, 4, 5):
        r = space_form_riemann(k, 1.0)
        assert curvature_symmetry_residual(r) == 0.0
        assert scalar(r) == pytest.approx(k * (k - 1), abs=1e-12)
        assert norm_sq(r) == pytest.approx(2 * k * (k - 1), abs=1e-12)
        # constant curvature => Weyl part vanishes identically
        assert norm_sq(weyl_from_riemann(r)) == pytest.approx(0.0, abs=1e-20)


def test_ricci_rejects_asymmetric_input(rng):
    t = Tensor4(4, rng.standard_normal(256))
    with pytest.raises(ValueError):
        ricci(t)


def test_weyl_is_trace_free(rng):
    r = product_riemann([sphere(2), sphere(4)])
    w = weyl_from_riemann(r)
    assert curvature_symmetry_residual(w) < 1e-12
    tr = np.einsum("ikjk->ij", w.as_array())
    assert np.abs(tr).max() < 1e-12


def test_weyl_zero_in_low_dimensions():
    r = space_form_riemann(3, 2.0)
    assert norm_sq(weyl_from_riemann(r)) == 0.0


def test_einstein_norm_decomposition():
    # Einstein: |Riem|^2 = |W|^2 + 2 S^2 / (n(n-1))
    r = fubini_study_riemann(2, 4.0)
    n = r.dim
    s = scalar(r)
    w = weyl_from_riemann(r)
    assert norm_sq(r) == pytest.approx(
        norm_sq(w) + 2.0 * s * s / (n * (n - 1)), rel=1e-12
    )


def _random_rotation(rng, n):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return q


def test_frame_rotate_is_isometric(rng):
    r = fubini_study_riemann(2, 4.0)
    o = _random_rotation(rng, 4)
    rr = frame_rotate(r, o)
    assert norm_sq(rr) == pytest.approx(norm_sq(r), rel=1e-12)
    assert scalar(rr) == pytest.approx(scalar(r), rel=1e-12)
    # decomposition is equivariant: W(O.R) = O.W(R)
    lhs = weyl_from_riemann(rr)
    rhs = frame_rotate(weyl_from_riemann(r), o)
    assert np.abs(lhs.data - rhs.data).max() < 1e-10


def test_frame_rotate_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        frame_rotate(Tensor4.zeros(3), np.ones((3, 3)))


def test_pad_tensor_preserves_components_and_inner():
    r = space_form_riemann(4, 1.0)
    p = pad_tensor(r, 6)
    assert p.dim == 6
    assert norm_sq(p) == norm_sq(r)
    assert inner(p, p) == inner(r, r)
    assert p.get(1, 2, 1, 2) == r.get(1, 2, 1, 2)
    assert p.get(5, 6, 5, 6) == 0.0
    with pytest.raises(ValueError):
        pad_tensor(p, 4)
