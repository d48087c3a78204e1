from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import roots_jacobi

from sobolev_ball.polynomials import (
    ParameterDomainError, jacobi_coeffs, jacobi_norm0, poly_add, poly_eval, poly_scale,
    poly_sub,
)
from sobolev_ball.radial import apply_J_beta, p_beta, radial_inner

HALF_BETAS = [Fraction(k, 2) for k in range(0, 21)]
small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
coeff_lists = st.lists(small_fractions, min_size=1, max_size=11)


def test_apply_J_examples():
    for b in (0, Fraction(1, 2), 3):
        assert apply_J_beta((Fraction(1),), b) == (-(b + 1),)
    assert apply_J_beta((0, Fraction(1)), 2) == (1, -8)


def test_apply_J_matches_sympy():
    s = sp.Symbol("s")
    q = [Fraction(3), Fraction(-1, 2), Fraction(2), Fraction(0), Fraction(5, 3)]
    for b in (0, Fraction(1, 2), 7):
        qs = sum(sp.Rational(c.numerator, c.denominator) * s ** k for k, c in enumerate(q))
        bs = sp.Rational(b.numerator, b.denominator) if isinstance(b, Fraction) else b
        ref = sp.expand((1 - s ** 2) * sp.diff(qs, s, 2) + (bs - 1 - (bs + 3) * s) * sp.diff(qs, s)
                        - (bs + 1) * qs)
        got = apply_J_beta(q, b)
        coeffs = sp.Poly(ref, s).all_coeffs()[::-1]
        assert [sp.Rational(c.numerator, c.denominator) for c in got] == coeffs


def test_p_beta_examples():
    assert p_beta(0, 4) == (1,)
    for b in (0, 2.5, 9):
        assert p_beta(1, b) == (1, -1)
    assert p_beta(2, 0) == (1, 1, -2)


@pytest.mark.parametrize("beta", [Fraction(b) for b in range(13)] + [Fraction(7, 2)])
def test_JPn_identity_exact(beta):
    for j in range(0, 16):
        lhs = apply_J_beta(p_beta(j, beta), beta)
        if j == 0:
            assert lhs == (-(beta + 1),)
        else:
            assert poly_sub(lhs, poly_scale(jacobi_coeffs(0, beta, j), 2 * j * (j + 1))) == ()


def test_radial_inner_examples():
    for b in (0.0, 0.5, 3.0):
        assert radial_inner((1,), (1,), b) == pytest.approx((b + 1) * 2 ** (b + 1), rel=1e-13)
        x, w = roots_jacobi(40, 0, b)
        assert radial_inner((1,), (1,), b) == pytest.approx(np.dot(w, np.full_like(x, (b + 1) ** 2)),
                                                            rel=1e-13)
        for j in range(1, 8):
            expect = 4 * j ** 2 * (j + 1) ** 2 * jacobi_norm0(b, j)
            assert radial_inner(p_beta(j, b), p_beta(j, b), b) == pytest.approx(expect, rel=1e-12)


def test_radial_orthogonality():
    for b in HALF_BETAS:
        ps = [p_beta(j, b) for j in range(16)]
        scale = max(radial_inner(f, f, b) for f in ps)
        off = [radial_inner(ps[i], ps[k], b) for i in range(16) for k in range(i)]
        assert max(abs(v) for v in off) < 1e-12 * scale


def test_radial_inner_rejects_bad_beta():
    with pytest.raises(ParameterDomainError):
        radial_inner((1,), (1,), -1)
    with pytest.raises(ParameterDomainError):
        p_beta(2, -1.5)


@settings(max_examples=60, deadline=None)
@given(coeff_lists, coeff_lists, small_fractions, small_fractions, st.sampled_from(HALF_BETAS))
def test_apply_J_linear(f, g, a, c, b):
    lhs = apply_J_beta(poly_add(poly_scale(f, a), poly_scale(g, c)), b)
    rhs = poly_add(poly_scale(apply_J_beta(f, b), a), poly_scale(apply_J_beta(g, b), c))
    assert poly_sub(lhs, rhs) == ()


@settings(max_examples=200, deadline=None)
@given(coeff_lists.filter(lambda c: any(c)), st.sampled_from(HALF_BETAS))
def test_radial_inner_positive(f, b):
    assert radial_inner(f, f, b) > 0


@settings(max_examples=50, deadline=None)
@given(coeff_lists, coeff_lists, st.sampled_from(HALF_BETAS))
def test_radial_inner_symmetric(f, g, b):
    assert radial_inner(f, g, b) == radial_inner(g, f, b)


def test_float_inputs_work():
    q = [0.5, -1.25, 2.0]
    exact = apply_J_beta([Fraction(v) for v in q], 2)
    assert np.allclose([float(c) for c in apply_J_beta(q, 2.0)], [float(c) for c in exact])
    assert float(poly_eval(exact, Fraction(1, 3))) == pytest.approx(
        float(poly_eval(apply_J_beta(q, 2.0), 1 / 3)), rel=1e-14)
