"""Radial reduction of the lifted Laplacian.

Writing a ball polynomial as q(2|x|^2 - 1) Y(x) with Y a solid harmonic of
degree m, the Laplacian of (1 - |x|^2) times it is 4 (J q)(2r^2 - 1) Y(x),
where J is the second-order operator implemented by :func:`apply_J_beta`
with beta = m + (d - 2)/2.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.special import roots_jacobi

from .polynomials import (
    ParameterDomainError,
    PolyCoeffs,
    degree,
    jacobi_coeffs,
    poly_add,
    poly_deriv,
    poly_eval,
    poly_mul,
    poly_scale,
    trim,
)


def _exactify(beta):
    return beta if isinstance(beta, (int, Fraction)) else Fraction(float(beta))


def apply_J_beta(q: PolyCoeffs, beta) -> PolyCoeffs:
    """Coefficients of (1-s^2) q'' + (beta-1-(beta+3)s) q' - (beta+1) q.

    Works in whatever arithmetic the inputs carry; pass ``Fraction``
    coefficients (and a rational ``beta``) for an exact result.
    """
    q = trim(q)
    if any(isinstance(c, Fraction) for c in q):
        beta = _exactify(beta)
    d1 = poly_deriv(q)
    d2 = poly_deriv(d1)
    out = poly_mul((1, 0, -1), d2)
    out = poly_add(out, poly_mul((beta - 1, -(beta + 3)), d1))
    out = poly_add(out, poly_scale(q, -(beta + 1)))
    return out


def p_beta(j: int, beta) -> PolyCoeffs:
    """Radial orthogonal family: 1 for j = 0, (1-s) P_{j-1}^(2,beta)(s) otherwise."""
    if not beta > -1:
        raise ParameterDomainError(f"beta must exceed -1, got {beta}")
    if j == 0:
        return (Fraction(1),)
    return poly_mul((Fraction(1), Fraction(-1)), jacobi_coeffs(2, beta, j - 1))


def radial_inner(f: PolyCoeffs, g: PolyCoeffs, beta) -> float:
    """Integral over [-1, 1] of (J f)(J g)(1+s)^beta.

    Gauss-Jacobi with weight (1+s)^beta; the node count is chosen from the
    degrees of the inputs so the rule is exact.
    """
    if not beta > -1:
        raise ParameterDomainError(f"beta must exceed -1, got {beta}")
    jf = apply_J_beta(f, beta)
    jg = apply_J_beta(g, beta)
    deg = max(degree(jf), 0) + max(degree(jg), 0)
    npts = deg // 2 + 2
    nodes, weights = roots_jacobi(npts, 0.0, float(beta))
    return float(np.dot(weights, poly_eval(jf, nodes) * poly_eval(jg, nodes)))


__all__ = ["apply_J_beta", "p_beta", "radial_inner"]
