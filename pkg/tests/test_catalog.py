"""Curvature catalog: exact row identities, constructive reproduction,
bound equality cases, and the scaled-product threshold."""

import dataclasses
import math
from fractions import Fraction

import pytest

from weylpinch.catalog import (
    ConformallyFlatError,
    FIVE_DIM_BRACKET,
    S2XS4_BETA_STAR,
    SIX_DIM_GUESS,
    builtin_entries,
    complex_projective,
    consistency_check,
    construct_and_match,
    einstein_product_riemann,
    einstein_scales,
    five_dim_bound_check,
    flat,
    product_riemann,
    q_ratio_bound,
    s2xs4_counterexample,
    sharp_bound_ratio,
    space_form_riemann,
    sphere,
    squashed_cp3_weyl,
    summarize,
    table_maxima,
    yamabe_weyl_constant,
)
from weylpinch.constraints import is_algebraic_weyl
from weylpinch.qfunc import q_value, ratio
from weylpinch.tensor import norm_sq, scalar, weyl_from_riemann


# ---------------------------------------------------------------------------
# dimensional constants


def test_pinching_constants():
    assert q_ratio_bound(4) == pytest.approx(math.sqrt(6.0) / 4.0, abs=1e-15)
    assert q_ratio_bound(5) == pytest.approx(4.0 / math.sqrt(10.0), abs=1e-15)
    assert q_ratio_bound(6) == pytest.approx(
        math.sqrt(70.0) / (2.0 * math.sqrt(3.0)), abs=1e-15
    )
    for n in (7, 8, 9, 12):
        assert q_ratio_bound(n) == 2.5


def test_yamabe_constants_and_relations():
    assert yamabe_weyl_constant(4) == pytest.approx(math.sqrt(6.0), abs=1e-12)
    assert yamabe_weyl_constant(5) == pytest.approx(
        64.0 / (3.0 * math.sqrt(10.0)), abs=1e-12
    )
    assert yamabe_weyl_constant(6) == pytest.approx(math.sqrt(210.0), abs=1e-12)
    for n in (7, 8, 9):
        assert yamabe_weyl_constant(n) == pytest.approx(2.5 * n, abs=1e-12)
    # A(n) = n C(n) except in dimension five, where the bracket constant
    # changes the relation to A(5) = (16/3) C(5)
    for n in (4, 6, 7, 8, 9):
        assert yamabe_weyl_constant(n) == pytest.approx(
            n * q_ratio_bound(n), abs=1e-12
        )
    assert yamabe_weyl_constant(5) == pytest.approx(
        (16.0 / 3.0) * q_ratio_bound(5), abs=1e-12
    )


def test_every_row_respects_yamabe_bound():
    for entry in builtin_entries():
        assert entry.a_m.value() <= yamabe_weyl_constant(entry.dim) + 1e-12


# ---------------------------------------------------------------------------
# exact row identities


def test_consistency_check_passes_with_one_expected_fail():
    report = consistency_check()
    assert report.passed
    assert len(report.checks) == 45
    assert [c.name for c in report.expected_failures] == ["S5 x S2 x S2"]


def test_consistency_check_catches_corruption():
    rows = builtin_entries()
    bad = dataclasses.replace(rows[0], q=rows[0].q + 1)
    report = consistency_check([bad])
    assert not report.passed
    assert report.failures[0].name == rows[0].name


def test_symmetric_identity_is_exact():
    for entry in builtin_entries():
        if entry.symmetric and not entry.expected_fail:
            assert Fraction(entry.dim) * entry.q == \
                entry.scalar * entry.weyl_norm_sq


# ---------------------------------------------------------------------------
# constructors


def test_space_form_products_match_summaries():
    r = product_riemann([sphere(2), sphere(4)])
    s = summarize(r)
    assert s.dim == 6
    assert s.scalar == pytest.approx(2.0 + 12.0, abs=1e-12)
    assert s.a_m is not None


def test_flat_factor_and_scale():
    r = product_riemann([sphere(3), flat(2)])
    assert scalar(r) == pytest.approx(6.0, abs=1e-12)
    half = product_riemann([sphere(3, scale=2.0), flat(2)])
    assert scalar(half) == pytest.approx(3.0, abs=1e-12)


def test_einstein_scales_balance_ricci():
    scales = einstein_scales([sphere(2), sphere(4)])
    assert scales[0] == 1.0
    # Ricci eigenvalue of S^k(scale) is (k-1)/scale; all factors equal
    assert (4 - 1) / scales[1] == pytest.approx(2 - 1, abs=1e-12)


def test_einstein_scales_reject_flat_mix():
    with pytest.raises(ValueError):
        einstein_scales([sphere(3), flat(2)])


def test_construct_and_match_all_rows():
    rows = [
        e for e in builtin_entries()
        if e.constructibility in ("SpaceFormProduct", "FubiniStudyProduct")
    ]
    assert rows
    for entry in rows:
        report = construct_and_match(entry)
        if entry.expected_fail:
            assert report.status == "expected_fail"
        else:
            assert report.status == "ok", (entry.name, report.errors)
            assert report.max_rel_error <= 1e-9


def test_cp_product_is_einstein_and_symmetric():
    r = einstein_product_riemann([sphere(3), complex_projective(3)])
    w = weyl_from_riemann(r)
    assert 9.0 * q_value(w) == pytest.approx(scalar(r) * norm_sq(w), rel=1e-12)


def test_space_form_has_no_weyl_part():
    s = summarize(space_form_riemann(5, 1.0))
    assert s.weyl_norm_sq == pytest.approx(0.0, abs=1e-20)
    assert s.c_m is None and s.a_m is None


# ---------------------------------------------------------------------------
# maxima per dimension


def test_table_maxima_names():
    assert [e.name for e in table_maxima(5).a_m_maxima] == ["S2 x S3"]
    six = {e.name for e in table_maxima(6).a_m_maxima}
    assert six == {"SO(4) bi-invariant", "U(4)/(U(1)xU(3))",
                   "SO(6)/U(3)", "S3 x S3"}
    assert [e.name for e in table_maxima(8).c_m_maxima] == ["S4 x S4"]
    # the six-dimensional maximum attains the guessed pinching constant
    top = max(e.a_m.value() for e in table_maxima(6).a_m_maxima)
    assert top == pytest.approx(SIX_DIM_GUESS, abs=1e-12)
    with pytest.raises(ValueError):
        table_maxima(4)


# ---------------------------------------------------------------------------
# squashed twistor fixture


def test_squashed_fixture_invariants():
    w = squashed_cp3_weyl()
    assert is_algebraic_weyl(w, tol=1e-12).passed
    assert norm_sq(w) == pytest.approx(7.5, abs=1e-12)
    assert q_value(w) == pytest.approx(11.25, abs=1e-12)
    assert ratio(w) == pytest.approx(math.sqrt(0.3), abs=1e-12)


# ---------------------------------------------------------------------------
# sharp bound


def test_sharp_bound_equality_for_symmetric_rows():
    for entry in builtin_entries():
        if not entry.symmetric or entry.expected_fail:
            continue
        report = sharp_bound_ratio(
            float(entry.scalar), float(entry.q), float(entry.weyl_norm_sq),
            entry.dim, name=entry.name,
        )
        assert report.equality, entry.name
        assert report.ratio == pytest.approx(1.0, abs=1e-9)


def test_sharp_bound_strict_for_squashed():
    report = sharp_bound_ratio(7.5, 11.25, 7.5, 6, name="squashed")
    assert not report.equality
    assert report.ratio == pytest.approx(5.0 / 6.0, abs=1e-9)


def test_sharp_bound_rejects_conformally_flat():
    with pytest.raises(ConformallyFlatError):
        sharp_bound_ratio(10.0, 0.0, 0.0, 5)


def test_five_dim_variant_bracket():
    assert FIVE_DIM_BRACKET == Fraction(16, 15)
    # (16/15) S = (16/3) |q| / |W|^2 on a locally symmetric 5-space: the
    # bracket cancels against the n=5 factor exactly
    for entry in builtin_entries():
        if entry.dim != 5 or not entry.symmetric:
            continue
        report = five_dim_bound_check(
            float(entry.scalar), float(entry.q), float(entry.weyl_norm_sq),
        )
        assert report.equality, entry.name


# ---------------------------------------------------------------------------
# scaled-product threshold


def test_beta_star_closed_form():
    assert S2XS4_BETA_STAR == pytest.approx(1.0 / math.sqrt(6.0), abs=1e-15)
    assert S2XS4_BETA_STAR == pytest.approx(0.408248, abs=1e-6)


def test_counterexample_crosses_sqrt10_at_beta_star():
    target = math.sqrt(10.0)
    assert s2xs4_counterexample(S2XS4_BETA_STAR).a_m == pytest.approx(
        target, abs=1e-9
    )
    assert s2xs4_counterexample(1.0).a_m > target
    assert s2xs4_counterexample(0.2).a_m < target
    # monotone increasing sweep
    values = [s2xs4_counterexample(b).a_m for b in (0.3, 0.35, 0.4, 0.45, 0.5)]
    assert values == sorted(values)
    with pytest.raises(ValueError):
        s2xs4_counterexample(0.0)
