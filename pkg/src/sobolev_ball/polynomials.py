"""Jacobi and Gegenbauer polynomials.

Univariate polynomials in coefficient form are plain tuples in ascending
power order (``PolyCoeffs``).  Coefficients are either ``Fraction`` (exact
algebra, the default for :func:`jacobi_coeffs`) or ``float``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

import numpy as np

Number = Union[Fraction, float, int]
PolyCoeffs = Tuple[Number, ...]


class ParameterDomainError(ValueError):
    """Raised when a Jacobi parameter is outside (-1, inf)."""


def _check_params(alpha, beta):
    if not alpha > -1 or not beta > -1:
        raise ParameterDomainError(
            f"Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}")


def _check_degree(j):
    if int(j) != j or j < 0:
        raise ValueError(f"degree must be a non-negative integer, got {j}")


# ---------------------------------------------------------------------------
# coefficient-sequence algebra

def trim(c: Sequence[Number]) -> PolyCoeffs:
    """Drop trailing zero coefficients; the zero polynomial is ``()``."""
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(c: Sequence[Number]) -> int:
    """Degree of a coefficient sequence; -1 for the zero polynomial."""
    return len(trim(c)) - 1


def poly_add(a, b) -> PolyCoeffs:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim(x + y for x, y in zip(a, b))


def poly_scale(a, k) -> PolyCoeffs:
    return trim(k * x for x in a)


def poly_sub(a, b) -> PolyCoeffs:
    return poly_add(a, poly_scale(b, -1))


def poly_mul(a, b) -> PolyCoeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for k, y in enumerate(b):
            out[i + k] += x * y
    return trim(out)


def poly_deriv(a) -> PolyCoeffs:
    return trim(k * a[k] for k in range(1, len(a)))


def poly_eval(c: Sequence[Number], s):
    """Evaluate a coefficient sequence at ``s`` (scalar or array).

    Exact (``Fraction``) coefficients are evaluated by exact Horner at the
    binary value of each point and rounded once, so the large cancelling
    monomial coefficients of high-degree Jacobi polynomials do not cost
    accuracy.
    """
    s_arr = np.asarray(s, dtype=float)
    c = trim(c)
    if not c:
        return np.zeros_like(s_arr) if s_arr.ndim else 0.0
    if any(isinstance(x, Fraction) for x in c):
        flat = s_arr.ravel()
        out = np.empty(flat.shape)
        for i, t in enumerate(flat):
            t = Fraction(float(t))
            acc = Fraction(0)
            for coef in reversed(c):
                acc = acc * t + coef
            out[i] = float(acc)
        out = out.reshape(s_arr.shape)
        return out if s_arr.ndim else float(out)
    out = np.zeros_like(s_arr)
    for coef in reversed(c):
        out = out * s_arr + float(coef)
    return out if s_arr.ndim else float(out)


def to_float(c: Sequence[Number]) -> np.ndarray:
    return np.array([float(x) for x in c], dtype=float)


# ---------------------------------------------------------------------------
# Jacobi polynomials

def jacobi_endpoint(alpha, beta, j, at_plus_one=True) -> float:
    """Exact value of P_j^(alpha,beta) at s = +1 or s = -1."""
    a = beta if not at_plus_one else alpha
    val = 1.0
    for k in range(1, j + 1):
        val *= (k + a) / k
    return val if at_plus_one or j % 2 == 0 else -val


def jacobi_eval(alpha, beta, j, s):
    """Evaluate P_j^(alpha, beta)(s) by the three-term recurrence.

    Vectorized over ``s``.  Values at s = +-1 are replaced by the closed-form
    binomial endpoint values so they are exact.
    """
    _check_params(alpha, beta)
    _check_degree(j)
    j = int(j)
    s_arr = np.asarray(s, dtype=float)
    p_prev = np.ones_like(s_arr)
    if j == 0:
        out = p_prev
    else:
        ab = alpha + beta
        p = (alpha + 1) + (ab + 2) * (s_arr - 1) / 2
        for n in range(2, j + 1):
            c = 2 * n + ab
            a_n = 2 * n * (n + ab) * (c - 2)
            b_n = (c - 1) * (c * (c - 2) * s_arr + alpha ** 2 - beta ** 2)
            c_n = 2 * (n + alpha - 1) * (n + beta - 1) * c
            p_prev, p = p, (b_n * p - c_n * p_prev) / a_n
        out = p
        out = np.where(s_arr == 1.0, jacobi_endpoint(alpha, beta, j, True), out)
        out = np.where(s_arr == -1.0, jacobi_endpoint(alpha, beta, j, False), out)
    return out if s_arr.ndim else float(out)


def _as_exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(float(x))


@lru_cache(maxsize=None)
def _jacobi_coeffs_exact(alpha: Fraction, beta: Fraction, j: int) -> PolyCoeffs:
    if j == 0:
        return (Fraction(1),)
    ab = alpha + beta
    p_prev = (Fraction(1),)
    p = trim((alpha + 1 - (ab + 2) / 2, (ab + 2) / 2))
    for n in range(2, j + 1):
        c = 2 * n + ab
        a_n = 2 * n * (n + ab) * (c - 2)
        lin = ((c - 1) * (alpha ** 2 - beta ** 2), (c - 1) * c * (c - 2))
        c_n = 2 * (n + alpha - 1) * (n + beta - 1) * c
        nxt = poly_sub(poly_mul(lin, p), poly_scale(p_prev, c_n))
        p_prev, p = p, poly_scale(nxt, 1 / a_n)
    return p


def jacobi_coeffs(alpha, beta, j, exact=True) -> PolyCoeffs:
    """Monomial coefficients (ascending) of P_j^(alpha, beta).

    With ``exact=True`` the coefficients are ``Fraction`` objects obtained
    from the binary values of ``alpha`` and ``beta``; otherwise floats.
    """
    _check_params(alpha, beta)
    _check_degree(j)
    c = _jacobi_coeffs_exact(_as_exact(alpha), _as_exact(beta), int(j))
    return c if exact else tuple(float(x) for x in c)


def jacobi_norm0(beta, j) -> float:
    """Integral of [P_j^(0,beta)(s)]^2 (1+s)^beta over [-1, 1]."""
    if not beta > -1:
        raise ParameterDomainError(f"beta must exceed -1, got {beta}")
    _check_degree(j)
    return 2.0 ** (beta + 1) / (2 * j + beta + 1)


# ---------------------------------------------------------------------------
# Gegenbauer / zonal kernel

def gegenbauer_eval(lam, m, t):
    """C_m^lam(t) by the standard recurrence (lam > 0)."""
    t = np.asarray(t, dtype=float)
    c_prev = np.ones_like(t)
    if m == 0:
        return c_prev if t.ndim else float(c_prev)
    c = 2 * lam * t
    for n in range(2, m + 1):
        c_prev, c = c, (2 * t * (n + lam - 1) * c - (n + 2 * lam - 2) * c_prev) / n
    return c if t.ndim else float(c)


def gegenbauer_kernel_factor(d: int, m: int, t):
    """Zonal factor Z_m(t) = (m + lam)/lam * C_m^lam(t), lam = (d-2)/2.

    For d = 2 the lam -> 0 limit is used: 1 for m = 0, else 2 T_m(t).
    This is the value of the sum over an orthonormal (averaged-measure)
    harmonic basis of degree m at two unit vectors with inner product t.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    if d == 2:
        if m == 0:
            out = np.ones_like(t)
        else:
            out = 2.0 * np.cos(m * np.arccos(t))
    else:
        lam = (d - 2) / 2
        out = (m + lam) / lam * np.asarray(gegenbauer_eval(lam, m, t))
    return out if t.ndim else float(out)


__all__ = [
    "ParameterDomainError", "PolyCoeffs", "trim", "degree", "poly_add",
    "poly_sub", "poly_scale", "poly_mul", "poly_deriv", "poly_eval",
    "to_float", "jacobi_endpoint", "jacobi_eval", "jacobi_coeffs",
    "jacobi_norm0", "gegenbauer_eval", "gegenbauer_kernel_factor",
]
