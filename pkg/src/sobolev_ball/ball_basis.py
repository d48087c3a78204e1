"""Orthogonal polynomial bases on the unit ball.

Two families share the index (n, j, nu) with 0 <= 2j <= n and
1 <= nu <= sigma_{n-2j}, and the radial parameter beta = n - 2j + (d-2)/2:

classical, weight (1 - |x|^2)^mu
    P_j^(mu, beta)(2|x|^2 - 1) Y_nu^{n-2j}(x)

Sobolev, inner product built from the lifted Laplacian Delta[(1-|x|^2) f]
    Q_{0,nu}^n = Y_nu^n,
    Q_{j,nu}^n = (1 - |x|^2) P_{j-1}^(2, beta)(2|x|^2 - 1) Y_nu^{n-2j}(x),  j >= 1

so Q_{j,nu}^n = (1 - |x|^2) times the classical W_2 element (n-2, j-1, nu).

Squared Sobolev norms of this family are (2n + d)/d for j = 0 and
2 j^2 (j+1)^2 / (d (n + d/2)) for j >= 1.  The j >= 1 value is a quarter of
the one obtained with the radial factor (1 - s) P_{j-1}^(2,beta)(s), which
equals 2 (1 - |x|^2) P_{j-1}^(2,beta) at s = 2|x|^2 - 1.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple

import numpy as np

from .harmonics import _as_points, harmonic_dim, solid_harmonics
from .polynomials import ParameterDomainError, jacobi_eval, poly_eval
from .radial import apply_J_beta


class BasisIndex(NamedTuple):
    n: int
    j: int
    nu: int


def radial_beta(idx: BasisIndex, d: int) -> float:
    return idx.n - 2 * idx.j + (d - 2) / 2


def validate_index(idx: BasisIndex, d: int) -> BasisIndex:
    n, j, nu = idx
    if n < 0 or j < 0 or 2 * j > n:
        raise IndexError(f"invalid (n, j) = ({n}, {j})")
    if not 1 <= nu <= harmonic_dim(d, n - 2 * j):
        raise IndexError(f"nu={nu} out of range for n-2j={n - 2 * j}, d={d}")
    return BasisIndex(int(n), int(j), int(nu))


def basis_indices(d: int, n: int) -> list[BasisIndex]:
    """All indices of degree exactly n, ordered by (j, nu)."""
    return [BasisIndex(n, j, nu)
            for j in range(n // 2 + 1)
            for nu in range(1, harmonic_dim(d, n - 2 * j) + 1)]


def all_indices(d: int, max_degree: int) -> list[BasisIndex]:
    return [idx for n in range(max_degree + 1) for idx in basis_indices(d, n)]


def space_dim(d: int, n: int) -> int:
    """Dimension of the degree-n orthogonal space, C(n+d-1, d-1)."""
    return comb(n + d - 1, d - 1)


def sobolev_norm_sq(idx: BasisIndex, d: int) -> float:
    n, j, _ = idx
    if j == 0:
        return (2 * n + d) / d
    return 2 * j ** 2 * (j + 1) ** 2 / (d * (n + d / 2))


class _HarmonicCache:
    """Solid harmonics of each degree at a fixed point set, computed once."""

    def __init__(self, d, pts):
        self.d = d
        self.pts = pts
        self.r2 = np.sum(pts * pts, axis=1)
        self._blocks = {}

    def harmonic(self, m, nu):
        if m not in self._blocks:
            self._blocks[m] = solid_harmonics(self.d, m, self.pts)
        return self._blocks[m][nu - 1]


def _classical(cache, mu, idx):
    beta = radial_beta(idx, cache.d)
    rad = jacobi_eval(mu, beta, idx.j, 2 * cache.r2 - 1)
    return rad * cache.harmonic(idx.n - 2 * idx.j, idx.nu)


def _sobolev(cache, idx):
    if idx.j == 0:
        return cache.harmonic(idx.n, idx.nu)
    beta = radial_beta(idx, cache.d)
    rad = (1 - cache.r2) * jacobi_eval(2, beta, idx.j - 1, 2 * cache.r2 - 1)
    return rad * cache.harmonic(idx.n - 2 * idx.j, idx.nu)


def _lift(cache, idx):
    if idx.j == 0:
        return -2 * (cache.d + 2 * idx.n) * cache.harmonic(idx.n, idx.nu)
    return 4 * idx.j * (idx.j + 1) * _classical(cache, 0, idx)


def _evaluate(kind, indices, x, d, mu=0.0, normalized=False):
    pts, single = _as_points(x, d)
    cache = _HarmonicCache(d, pts)
    rows = []
    for idx in indices:
        idx = validate_index(idx, d)
        if kind == "classical":
            v = _classical(cache, mu, idx)
        elif kind == "sobolev":
            v = _sobolev(cache, idx)
        else:
            v = _lift(cache, idx)
        if normalized:
            v = v / np.sqrt(sobolev_norm_sq(idx, d))
        rows.append(v)
    out = np.array(rows).reshape(len(rows), len(pts))
    return out[:, 0] if single else out


def classical_basis_eval(mu, idx: BasisIndex, x, d: int):
    """P_j^(mu, beta)(2|x|^2 - 1) Y_nu^{n-2j}(x) for the weight (1-|x|^2)^mu."""
    if not mu > -1:
        raise ParameterDomainError(f"mu must exceed -1, got {mu}")
    out = _evaluate("classical", [idx], x, d, mu=mu)
    return out[0]


def sobolev_basis_eval(idx: BasisIndex, x, d: int, normalized: bool = False):
    out = _evaluate("sobolev", [idx], x, d, normalized=normalized)
    return out[0]


def laplacian_lift(idx: BasisIndex, x, d: int, normalized: bool = False):
    """Delta[(1 - |x|^2) Q_idx](x) in closed form.

    j = 0:  -2 (d + 2n) Y_nu^n(x)
    j >= 1: 4 j (j+1) P_j^(0, beta)(2|x|^2 - 1) Y_nu^{n-2j}(x)
    """
    out = _evaluate("lift", [idx], x, d, normalized=normalized)
    return out[0]


def classical_matrix(mu, indices: Iterable[BasisIndex], x, d: int) -> np.ndarray:
    """Rows are classical basis functions, columns are points."""
    if not mu > -1:
        raise ParameterDomainError(f"mu must exceed -1, got {mu}")
    return _evaluate("classical", list(indices), np.atleast_2d(x), d, mu=mu)


def sobolev_matrix(indices: Iterable[BasisIndex], x, d: int, normalized=False) -> np.ndarray:
    return _evaluate("sobolev", list(indices), np.atleast_2d(x), d, normalized=normalized)


def lift_matrix(indices: Iterable[BasisIndex], x, d: int, normalized=False) -> np.ndarray:
    return _evaluate("lift", list(indices), np.atleast_2d(x), d, normalized=normalized)


def radial_lift_eval(q, m: int, nu: int, x, d: int):
    """4 (J_beta q)(2r^2 - 1) Y_nu^m(x) with beta = m + (d-2)/2.

    Equals Delta[(1 - |x|^2) q(2|x|^2 - 1) Y_nu^m(x)]; an independent route
    to the lifted Laplacian that goes through the radial operator.
    """
    pts, single = _as_points(x, d)
    r2 = np.sum(pts * pts, axis=1)
    jq = apply_J_beta(q, Fraction(2 * m + d - 2, 2))
    out = 4 * poly_eval(jq, 2 * r2 - 1) * solid_harmonics(d, m, pts)[nu - 1]
    return float(out[0]) if single else out


__all__ = [
    "BasisIndex", "radial_beta", "validate_index", "basis_indices",
    "all_indices", "space_dim", "sobolev_norm_sq", "classical_basis_eval",
    "sobolev_basis_eval", "laplacian_lift", "classical_matrix",
    "sobolev_matrix", "lift_matrix", "radial_lift_eval",
]
