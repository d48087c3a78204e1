from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from scipy.special import eval_gegenbauer, eval_jacobi, roots_jacobi

from sobolev_ball.polynomials import (
    ParameterDomainError, degree, gegenbauer_eval, gegenbauer_kernel_factor,
    jacobi_coeffs, jacobi_endpoint, jacobi_eval, jacobi_norm0, poly_add,
    poly_deriv, poly_eval, poly_mul, poly_scale, poly_sub, to_float, trim,
)

BETAS = [Fraction(b) for b in range(13)] + [Fraction(1, 2), Fraction(5, 2), Fraction(19, 2)]


def J(a, b, j):
    return jacobi_coeffs(a, b, j) if j >= 0 else ()


def test_jacobi_eval_examples():
    assert jacobi_eval(0, 3, 5, 1.0) == 1.0
    assert jacobi_eval(2, 1, 3, 1.0) == 10.0
    assert np.all(jacobi_eval(1.5, 0.5, 0, np.linspace(-1, 1, 7)) == 1.0)


def test_jacobi_coeffs_examples():
    assert jacobi_coeffs(0, 0, 1) == (0, 1)
    assert jacobi_coeffs(3, 7, 0) == (1,)
    # P_1^(0,2)(s) = 2s - 1: P(1) = 1 and P(-1) = -3
    c = jacobi_coeffs(0, 2, 1)
    assert c == (-1, 2)
    assert [poly_eval(c, s) for s in (-1, 0, 1)] == [-3, -1, 1]
    assert np.allclose(jacobi_eval(0, 2, 1, np.array([-1.0, 0.0, 1.0])), [-3, -1, 1])


def test_jacobi_coeffs_match_sympy():
    s = sp.Symbol("s")
    for a, b, j in [(0, 0, 4), (2, Fraction(3, 2), 5), (1, 7, 6), (0, 12, 3)]:
        expected = sp.Poly(sp.expand(sp.jacobi(j, sp.nsimplify(a), sp.nsimplify(b), s)), s)
        got = jacobi_coeffs(a, b, j)
        ref = [Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1]))
               for c in reversed(expected.all_coeffs())]
        assert list(got) == ref
        assert degree(got) == j


@pytest.mark.parametrize("a", [0, 1, 2, 0.5])
@pytest.mark.parametrize("b", [0, 1, 3.5, 12])
def test_jacobi_eval_matches_scipy(a, b):
    s = np.linspace(-1, 1, 101)
    for j in range(0, 21):
        ref = eval_jacobi(j, a, b, s)
        scale = max(1.0, np.max(np.abs(ref)))
        assert np.max(np.abs(jacobi_eval(a, b, j, s) - ref)) <= 1e-12 * scale


def test_endpoints_exact():
    for a, b, j in [(0, 4, 9), (2, 3.5, 6), (1, 0, 11)]:
        assert jacobi_eval(a, b, j, 1.0) == jacobi_endpoint(a, b, j)
        assert jacobi_eval(a, b, j, -1.0) == jacobi_endpoint(a, b, j, at_plus_one=False)
    assert jacobi_endpoint(0, 5, 7) == 1.0
    assert jacobi_endpoint(5, 0, 7, at_plus_one=False) == (-1) ** 7


def test_recurrence_matches_monomial_form():
    grid = np.linspace(-1, 1, 101)
    fgrid = [Fraction(float(s)) for s in grid]
    for a in range(3):
        for b in range(13):
            for j in range(21):
                c = jacobi_coeffs(a, b, j)
                mono = np.array([float(poly_eval(c, s)) for s in fgrid])
                rec = jacobi_eval(a, b, j, grid)
                assert np.max(np.abs(rec - mono)) <= 1e-12 * np.max(np.abs(mono))


def test_identity_jacobi_a():
    # (1-s) P_{j-1}^(2,b) = 2/(2j+b+1) [(j+1) P_{j-1}^(1,b) - j P_j^(1,b)]
    for b in BETAS:
        for j in range(1, 21):
            lhs = poly_mul((1, -1), J(2, b, j - 1))
            rhs = poly_scale(poly_sub(poly_scale(J(1, b, j - 1), j + 1), poly_scale(J(1, b, j), j)),
                             Fraction(2) / (2 * j + b + 1))
            assert poly_sub(lhs, rhs) == ()


def test_identity_jacobi():
    # (2j+b+1) P_j^(0,b) = (j+b+1) P_j^(1,b) - (j+b) P_{j-1}^(1,b)
    for b in BETAS:
        for j in range(0, 21):
            lhs = poly_scale(J(0, b, j), 2 * j + b + 1)
            rhs = poly_sub(poly_scale(J(1, b, j), j + b + 1), poly_scale(J(1, b, j - 1), j + b))
            assert poly_sub(lhs, rhs) == ()


def test_contiguous_relation():
    # (2j+b+1)(1+s) P_{j-1}^(1,b+1) = 2(j+b) P_{j-1}^(1,b) + 2j P_j^(1,b)
    for b in BETAS:
        for j in range(1, 21):
            lhs = poly_scale(poly_mul((1, 1), J(1, b + 1, j - 1)), 2 * j + b + 1)
            rhs = poly_add(poly_scale(J(1, b, j - 1), 2 * (j + b)), poly_scale(J(1, b, j), 2 * j))
            assert poly_sub(lhs, rhs) == ()


def test_contiguous_relation_with_swapped_weights_fails_for_positive_beta():
    j, b = 2, Fraction(3)
    lhs = poly_scale(poly_mul((1, 1), J(1, b + 1, j - 1)), 2 * j + b + 1)
    swapped = poly_add(poly_scale(J(1, b, j), 2 * (j + b)), poly_scale(J(1, b, j - 1), 2 * j))
    assert poly_sub(lhs, swapped) != ()


def test_differential_equation_residual():
    for b in BETAS:
        for j in range(1, 21):
            y = J(1, b, j - 1)
            y1, y2 = poly_deriv(y), poly_deriv(poly_deriv(y))
            res = poly_add(poly_mul((1, 0, -1), y2),
                           poly_add(poly_mul((b - 1, -(b + 3)), y1),
                                    poly_scale(y, (j - 1) * (j + b + 1))))
            assert res == ()


def test_jacobi_norm0():
    assert jacobi_norm0(0, 0) == 2
    assert jacobi_norm0(1, 2) == pytest.approx(4 / 6, rel=1e-15)
    for b in (0.0, 0.5, 3.0, 7.5):
        x, w = roots_jacobi(30, 0, b)
        for j in range(8):
            num = np.dot(w, eval_jacobi(j, 0, b, x) ** 2)
            assert jacobi_norm0(b, j) == pytest.approx(num, rel=1e-12)


def test_gegenbauer():
    t = np.linspace(-1, 1, 33)
    for lam in (0.5, 1.0, 2.5):
        for m in range(10):
            assert np.allclose(gegenbauer_eval(lam, m, t), eval_gegenbauer(m, lam, t),
                               rtol=1e-12, atol=1e-12)


def test_gegenbauer_kernel_factor_examples():
    t = np.linspace(-1, 1, 9)
    assert np.all(gegenbauer_kernel_factor(3, 0, t) == 1)
    assert np.allclose(gegenbauer_kernel_factor(3, 1, t), 3 * t, atol=1e-15)
    assert gegenbauer_kernel_factor(2, 4, 1.0) == pytest.approx(2.0, abs=1e-15)
    assert np.all(gegenbauer_kernel_factor(2, 0, t) == 1)
    # d = 4: (m+1) C_m^1 = (m+1) U_m
    assert np.allclose(gegenbauer_kernel_factor(4, 3, t), 4 * eval_gegenbauer(3, 1.0, t))


def test_parameter_domain():
    for bad in [(-1, 0), (0, -1), (-2.5, 3)]:
        with pytest.raises(ParameterDomainError):
            jacobi_eval(*bad, 2, 0.3)
        with pytest.raises(ParameterDomainError):
            jacobi_coeffs(*bad, 2)
    with pytest.raises(ParameterDomainError):
        jacobi_norm0(-1, 3)


def test_poly_helpers():
    assert trim((1, 2, 0, 0)) == (1, 2)
    assert trim(()) == ()
    assert degree(()) == -1
    assert degree((0, 0, 3)) == 2
    assert poly_mul((1, 1), (1, -1)) == (1, 0, -1)
    assert np.allclose(to_float((Fraction(1, 2), 3)), [0.5, 3.0])
    assert poly_eval((1, 2, 3), 2.0) == 17.0
