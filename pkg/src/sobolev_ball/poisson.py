"""Least-squares spectral solver for -Delta u = g on the ball, u = 0 on the sphere.

Trial functions are (1 - |x|^2) Q_idx.  Their Laplacians L_idx are mutually
orthogonal in L^2(B^d) (that is what makes the Q family Sobolev-orthogonal),
so minimizing ||Delta u + g||_2 decouples into one division per index:

    c_idx = -int g L_idx / int L_idx^2.

With v = sum c_idx Q_idx and u = (1 - |x|^2) v, the raw coefficient
<v, Q_idx> = c_idx * H_idx is stored, so the result is an ordinary
:class:`CoefficientVector` for v.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .ball_basis import all_indices, lift_matrix
from .expansion import CoefficientVector, _checked_values, resolve_quad_degree
from .functions import FunctionInput, as_function_input
from .harmonics import _as_points
from .quadrature import ball_rule, geometry_constants


@dataclass
class PoissonProblem:
    dim: int
    rhs: FunctionInput
    degree: int
    quad_degree: int | str = "auto"
    exact: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        self.rhs = as_function_input(self.rhs)
        self.quad_degree = resolve_quad_degree(self.degree, self.quad_degree)
        if self.quad_degree < 2 * self.degree + 8:
            raise ValueError(f"quad_degree must be >= 2*degree+8 = {2 * self.degree + 8}")


@dataclass
class PoissonSolution:
    coeffs: CoefficientVector
    residual_l2: float
    quad_degree: int
    info: dict = field(default_factory=dict)

    def evaluate(self, x):
        pts, single = _as_points(x, self.coeffs.dim)
        r2 = np.sum(pts * pts, axis=1)
        out = (1 - r2) * self.coeffs.evaluate(pts)
        # exact zero on the sphere regardless of rounding in the series
        out = np.where(np.isclose(r2, 1.0, rtol=0, atol=1e-15), 0.0, out)
        return float(out[0]) if single else out

    __call__ = evaluate


def solve_poisson(problem: PoissonProblem) -> PoissonSolution:
    d, q = problem.dim, problem.quad_degree
    rule = ball_rule(d, q)
    g = _checked_values(problem.rhs, rule.points)
    indices = all_indices(d, problem.degree)
    lift = lift_matrix(indices, rule.points, d)
    wl = lift * rule.weights
    gl = wl @ g
    ll = np.einsum("ij,ij->i", wl, lift)
    c = -gl / ll
    vol, _ = geometry_constants(d)
    # <v, Q> = c * H and int L^2 = 4 d^2 vol H
    raw = c * ll / (4 * d * d * vol)
    resid = c @ lift + g
    residual = float(np.sqrt(max(np.dot(rule.weights, resid * resid), 0.0)))
    coeffs = CoefficientVector(d, problem.degree, dict(zip(indices, raw)), q)
    return PoissonSolution(coeffs, residual, q)


def normal_matrix(d: int, degree: int, quad_degree="auto") -> np.ndarray:
    """Gram matrix int L_a L_b over all trial indices with n <= degree."""
    q = resolve_quad_degree(degree, quad_degree)
    rule = ball_rule(d, q)
    lift = lift_matrix(all_indices(d, degree), rule.points, d)
    return (lift * rule.weights) @ lift.T


def dense_least_squares(problem: PoissonProblem) -> np.ndarray:
    """Trial coefficients c from a generic weighted least-squares solve."""
    d, q = problem.dim, problem.quad_degree
    rule = ball_rule(d, q)
    sw = np.sqrt(rule.weights)
    lift = lift_matrix(all_indices(d, problem.degree), rule.points, d)
    g = _checked_values(problem.rhs, rule.points)
    c, *_ = np.linalg.lstsq((lift * sw).T, -g * sw, rcond=None)
    return c


def trial_coefficients(solution: PoissonSolution) -> np.ndarray:
    """c_idx (multipliers of (1-|x|^2) Q_idx) recovered from the stored <v, Q>."""
    co = solution.coeffs
    return np.array([v / co.norm_sq(i) for i, v in co.entries.items()])


def sample_grid(d: int, n_r: int = 50, n_ang: int = 50) -> np.ndarray:
    """Polar (d=2) or spherical (d=3) sampling grid including r = 0 and r = 1.

    Columns: r, theta[, phi], then Cartesian coordinates.
    """
    r = np.linspace(0.0, 1.0, n_r)
    if d == 2:
        th = np.linspace(0.0, 2 * np.pi, n_ang, endpoint=False)
        rr, tt = np.meshgrid(r, th, indexing="ij")
        rr, tt = rr.ravel(), tt.ravel()
        return np.column_stack([rr, tt, rr * np.cos(tt), rr * np.sin(tt)])
    th = np.linspace(0.0, np.pi, n_ang)
    ph = np.linspace(0.0, 2 * np.pi, n_ang, endpoint=False)
    rr, tt, pp = (a.ravel() for a in np.meshgrid(r, th, ph, indexing="ij"))
    st = np.sin(tt)
    return np.column_stack([rr, tt, pp, rr * st * np.cos(pp), rr * st * np.sin(pp),
                            rr * np.cos(tt)])


def sup_error(solution: PoissonSolution, exact, d: int, n_r=50, n_ang=50) -> float:
    grid = sample_grid(d, n_r, n_ang)
    pts = grid[:, -d:]
    return float(np.max(np.abs(solution.evaluate(pts) - exact(pts))))


def convergence_report(problem: PoissonProblem, degrees) -> list[dict]:
    """Rows (degree, sup_error or None, residual_l2) for each requested degree.

    One quadrature rule (sized for the largest degree) serves every row, so
    the residual sequence is monotone over nested trial spaces.
    """
    degrees = list(degrees)
    if not degrees:
        return []
    q = max(problem.quad_degree, 2 * max(degrees) + 8)
    rows = []
    for n in degrees:
        sub = PoissonProblem(problem.dim, problem.rhs, n, q, problem.exact)
        sol = solve_poisson(sub)
        err = None if problem.exact is None else sup_error(sol, problem.exact, problem.dim,
                                                           *_grid_size(problem.dim))
        rows.append({"degree": n, "sup_error": err, "residual_l2": sol.residual_l2})
    return rows


def _grid_size(d):
    return (50, 50) if d == 2 else (20, 20)


__all__ = [
    "PoissonProblem", "PoissonSolution", "solve_poisson", "normal_matrix",
    "dense_least_squares", "trial_coefficients", "sample_grid", "sup_error",
    "convergence_report",
]
