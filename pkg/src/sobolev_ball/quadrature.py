"""Product quadrature on the unit ball and sphere for d = 2, 3.

Ball rules use the radial variable s = 2 r^2 - 1.  Then
r^{d-1} (1 - r^2)^mu dr = 2^{-(mu + (d-2)/2)} / 4 * (1-s)^mu (1+s)^{(d-2)/2} ds,
so Gauss-Jacobi nodes in s integrate every even radial power exactly (odd
powers only ever meet angular sums that vanish by symmetry).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .harmonics import SUPPORTED_DIMS


class DimensionError(ValueError):
    pass


class EvaluationError(ArithmeticError):
    """A function returned a non-finite value at a quadrature point."""

    def __init__(self, point, value):
        super().__init__(f"non-finite value {value!r} at point {tuple(point)}")
        self.point = np.asarray(point)
        self.value = value


@dataclass(frozen=True)
class QuadratureRule:
    points: np.ndarray
    weights: np.ndarray
    exact_degree: int
    domain: str = "ball"

    def __post_init__(self):
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return len(self.weights)

    def to_csv(self, path):
        """Write one row per node: coordinates then weight."""
        d = self.dim
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"x{i + 1}" for i in range(d)] + ["weight"])
            for p, wt in zip(self.points, self.weights):
                w.writerow([repr(float(v)) for v in p] + [repr(float(wt))])


def geometry_constants(d: int) -> tuple[float, float]:
    """(vol(B^d), omega_{d-1}) for the unit ball and its boundary sphere."""
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    omega = 2 * math.pi ** (d / 2) / math.gamma(d / 2)
    return omega / d, omega


def _check_dim(d):
    if d not in SUPPORTED_DIMS:
        raise DimensionError(f"quadrature supports d in {SUPPORTED_DIMS}, got {d}")


def _sphere_nodes(d, exact_degree):
    n_phi = exact_degree + 1
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    w_phi = np.full(n_phi, 2 * np.pi / n_phi)
    if d == 2:
        return np.column_stack([np.cos(phi), np.sin(phi)]), w_phi
    t, w_t = roots_legendre(exact_degree // 2 + 1)
    st = np.sqrt(1 - t * t)
    pts = np.column_stack([
        np.outer(st, np.cos(phi)).ravel(),
        np.outer(st, np.sin(phi)).ravel(),
        np.repeat(t, n_phi),
    ])
    return pts, np.outer(w_t, w_phi).ravel()


def sphere_rule(d: int, exact_degree: int) -> QuadratureRule:
    """Rule on S^{d-1}; weights sum to omega_{d-1}."""
    _check_dim(d)
    if exact_degree < 0:
        raise ValueError("exact_degree must be >= 0")
    pts, w = _sphere_nodes(d, exact_degree)
    return QuadratureRule(pts, w, exact_degree, "sphere")


def radial_rule(d: int, exact_degree: int, mu: float = 0.0):
    """Radii and weights for integral_0^1 g(r) r^{d-1} (1-r^2)^mu dr."""
    half = (d - 2) / 2
    n_s = (exact_degree // 2) // 2 + 1
    s, w_s = roots_jacobi(n_s, float(mu), half)
    r = np.sqrt((1 + s) / 2)
    return r, w_s * 2.0 ** (-(mu + half)) / 4


def ball_rule(d: int, exact_degree: int, mu: float = 0.0) -> QuadratureRule:
    """Rule on B^d exact for polynomials of total degree <= exact_degree.

    With ``mu != 0`` the weights already include (1 - |x|^2)^mu, giving an
    exact rule for the classical weight W_mu.
    """
    _check_dim(d)
    if exact_degree < 0:
        raise ValueError("exact_degree must be >= 0")
    if not mu > -1:
        raise ValueError(f"weight exponent must exceed -1, got {mu}")
    r, w_r = radial_rule(d, exact_degree, mu)
    sp, w_sp = _sphere_nodes(d, exact_degree)
    pts = (r[:, None, None] * sp[None, :, :]).reshape(-1, d)
    w = np.outer(w_r, w_sp).ravel()
    return QuadratureRule(pts, w, exact_degree, "ball" if not mu else f"ball(W_{mu})")


def integrate(f, rule: QuadratureRule) -> float:
    """Sum of w_i f(x_i).  ``f`` takes an (npts, d) array and returns npts values."""
    vals = np.asarray(f(rule.points), dtype=float)
    vals = np.broadcast_to(vals, rule.weights.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationError(rule.points[i], float(vals[i]))
    return float(np.dot(rule.weights, vals))


__all__ = [
    "DimensionError", "EvaluationError", "QuadratureRule", "geometry_constants",
    "ball_rule", "sphere_rule", "radial_rule", "integrate",
]
