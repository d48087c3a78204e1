"""Sobolev inner product, expansion coefficients, projections and kernels.

The inner product is

    <f, g> = 1 / (4 d^2 vol(B^d)) * int_B Delta[(1-|x|^2) f] Delta[(1-|x|^2) g] dx,

normalized so that <1, 1> = 1.  Coefficients f_hat = <f, Q_idx> can be
computed from values of f alone (Green's identity moves both derivatives
onto the basis function):

    j = 0:   f_hat = (d + 2n)/d * avg_S(f Y_nu^n)
    j >= 1:  f_hat = 4 j (j+1) / (d^2 vol) * [ (b+j)(b+j+1) int_B f Q
                                             - 1/2 int_S f Y_nu^{n-2j} ]

with b = n - 2j + (d-2)/2, ``avg_S`` the averaged surface integral and
``int_S`` the raw one.  :func:`calibrate_fourier_constants` recovers the two
multipliers numerically from the direct definition.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .ball_basis import (
    BasisIndex,
    all_indices,
    basis_indices,
    classical_matrix,
    laplacian_lift,
    radial_beta,
    sobolev_basis_eval,
    sobolev_matrix,
    sobolev_norm_sq,
    validate_index,
)
from .functions import FunctionInput, as_function_input
from .harmonics import _as_points, harmonic_dim, solid_harmonics
from .polynomials import (
    ParameterDomainError,
    gegenbauer_kernel_factor,
    jacobi_endpoint,
    jacobi_eval,
)
from .quadrature import EvaluationError, ball_rule, geometry_constants, sphere_rule


def resolve_quad_degree(max_degree: int, quad_degree="auto") -> int:
    if quad_degree in (None, "auto"):
        return 2 * max_degree + 8
    quad_degree = int(quad_degree)
    if quad_degree < 0:
        raise ValueError("quad_degree must be non-negative")
    return quad_degree


def _checked_values(f, pts):
    vals = np.asarray(f(pts), dtype=float)
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationError(pts[i], float(vals[i]))
    return vals


# ---------------------------------------------------------------------------
# coefficient container


@dataclass
class CoefficientVector:
    """Raw coefficients <f, Q_idx> for all indices up to ``max_degree``."""

    dim: int
    max_degree: int
    entries: dict = field(default_factory=dict)
    quad_degree: int | None = None

    def __post_init__(self):
        clean = {}
        for idx, val in self.entries.items():
            idx = validate_index(BasisIndex(*idx), self.dim)
            if idx.n > self.max_degree:
                raise IndexError(f"{idx} exceeds max_degree={self.max_degree}")
            clean[idx] = float(val)
        self.entries = dict(sorted(clean.items()))

    def norm_sq(self, idx):
        return sobolev_norm_sq(idx, self.dim)

    def normalized(self) -> dict:
        """Coordinates in the orthonormal basis, f_hat / sqrt(H)."""
        return {idx: v / np.sqrt(self.norm_sq(idx)) for idx, v in self.entries.items()}

    def project(self, n: int, x):
        """proj_n f at ``x``: sum over degree-n indices of f_hat / H * Q."""
        if not 0 <= n <= self.max_degree:
            raise IndexError(f"degree {n} outside [0, {self.max_degree}]")
        pts, single = _as_points(x, self.dim)
        idxs = [i for i in self.entries if i.n == n]
        if not idxs:
            out = np.zeros(len(pts))
        else:
            w = np.array([self.entries[i] / self.norm_sq(i) for i in idxs])
            out = w @ sobolev_matrix(idxs, pts, self.dim)
        return float(out[0]) if single else out

    def evaluate(self, x, max_degree: int | None = None):
        """Truncated series: sum of proj_n f for n <= max_degree."""
        pts, single = _as_points(x, self.dim)
        top = self.max_degree if max_degree is None else max_degree
        idxs = [i for i in self.entries if i.n <= top]
        if not idxs:
            out = np.zeros(len(pts))
        else:
            w = np.array([self.entries[i] / self.norm_sq(i) for i in idxs])
            out = w @ sobolev_matrix(idxs, pts, self.dim)
        return float(out[0]) if single else out

    def sobolev_norm_sq(self) -> float:
        """Parseval sum: sum of f_hat^2 / H."""
        return float(sum(v * v / self.norm_sq(i) for i, v in self.entries.items()))

    # serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "dim": self.dim,
            "max_degree": self.max_degree,
            "entries": [{"n": i.n, "j": i.j, "nu": i.nu, "value": v}
                        for i, v in self.entries.items()],
        }
        if self.quad_degree is not None:
            out["quad_degree"] = self.quad_degree
        return out

    def to_json(self) -> str:
        # repr-based float output round-trips exactly
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "CoefficientVector":
        entries = {BasisIndex(e["n"], e["j"], e["nu"]): float(e["value"])
                   for e in data["entries"]}
        return cls(int(data["dim"]), int(data["max_degree"]), entries,
                   data.get("quad_degree"))

    @classmethod
    def from_json(cls, text: str) -> "CoefficientVector":
        return cls.from_dict(json.loads(text))

    def to_csv_rows(self):
        yield ["n", "j", "nu", "value"]
        for i, v in self.entries.items():
            yield [i.n, i.j, i.nu, repr(v)]


# ---------------------------------------------------------------------------
# inner products and coefficients


def basis_function(idx: BasisIndex, d: int) -> FunctionInput:
    """Q_idx as a two-tier function input (values and lifted Laplacian)."""
    idx = validate_index(BasisIndex(*idx), d)
    return FunctionInput(lambda x: sobolev_basis_eval(idx, np.atleast_2d(x), d),
                         lambda x: laplacian_lift(idx, np.atleast_2d(x), d),
                         name=f"Q{tuple(idx)}")


def sobolev_inner_direct(f, g, d: int, quad_degree: int) -> float:
    """<f, g> from its definition; both inputs need ``lifted_laplacian``."""
    f, g = as_function_input(f), as_function_input(g)
    vol, _ = geometry_constants(d)
    rule = ball_rule(d, quad_degree)
    lf = _checked_values(f.lift, rule.points)
    lg = _checked_values(g.lift, rule.points)
    return float(np.dot(rule.weights, lf * lg)) / (4 * d * d * vol)


def fourier_constants(idx: BasisIndex, d: int) -> tuple[float, float]:
    """Multipliers (ball, surface) with f_hat = ball * int_B f Q + surface * int_S f Y.

    ``int_S`` is the raw surface integral of f against Y_nu^{n-2j}.
    """
    n, j, _ = idx
    vol, omega = geometry_constants(d)
    if j == 0:
        return 0.0, (d + 2 * n) / (d * omega)
    b = radial_beta(idx, d)
    scale = 4 * j * (j + 1) / (d * d * vol)
    return scale * (b + j) * (b + j + 1), -0.5 * scale


def derivative_free_coefficients(f, indices, d: int, quad_degree: int) -> np.ndarray:
    """f_hat for each index from values of f only (ball and sphere quadrature)."""
    f = as_function_input(f)
    indices = [validate_index(BasisIndex(*i), d) for i in indices]
    if not indices:
        return np.zeros(0)
    brule, srule = ball_rule(d, quad_degree), sphere_rule(d, quad_degree)
    fb = _checked_values(f, brule.points)
    fs = _checked_values(f, srule.points)
    ball_int = sobolev_matrix(indices, brule.points, d) @ (brule.weights * fb)
    surf = {}
    out = np.empty(len(indices))
    for k, idx in enumerate(indices):
        m = idx.n - 2 * idx.j
        if m not in surf:
            surf[m] = solid_harmonics(d, m, srule.points) @ (srule.weights * fs)
        a, b = fourier_constants(idx, d)
        out[k] = a * ball_int[k] + b * surf[m][idx.nu - 1]
    return out


def coeff_derivative_free(f, idx: BasisIndex, d: int, quad_degree: int) -> float:
    return float(derivative_free_coefficients(f, [idx], d, quad_degree)[0])


def expand(f, d: int, max_degree: int, quad_degree="auto") -> CoefficientVector:
    """Coefficients of f for every basis index with n <= max_degree."""
    q = resolve_quad_degree(max_degree, quad_degree)
    indices = all_indices(d, max_degree)
    vals = derivative_free_coefficients(f, indices, d, q)
    return CoefficientVector(d, max_degree, dict(zip(indices, vals)), q)


def project_n(coeffs: CoefficientVector, n: int, x):
    return coeffs.project(n, x)


def calibrate_fourier_constants(idx: BasisIndex, d: int, quad_degree: int, probes=None):
    """Fit (ball, surface) multipliers against the direct inner product.

    Uses least squares over probe functions with analytic lifted
    Laplacians; returns the fitted pair and the residual norm.
    """
    from .functions import get_function
    idx = validate_index(BasisIndex(*idx), d)
    if probes is None:
        probes = ["exp_x1", "gaussian", "cos_sum", "exp_mix", "sin_prod", "rational"]
    probes = [get_function(p, d) if isinstance(p, str) else p for p in probes]
    probes.append(basis_function(idx, d))
    q_fn = basis_function(idx, d)
    brule, srule = ball_rule(d, quad_degree), sphere_rule(d, quad_degree)
    m = idx.n - 2 * idx.j
    y_s = solid_harmonics(d, m, srule.points)[idx.nu - 1]
    q_b = q_fn(brule.points)
    rows, rhs = [], []
    for p in probes:
        rows.append([np.dot(brule.weights, p(brule.points) * q_b),
                     np.dot(srule.weights, p(srule.points) * y_s)])
        rhs.append(sobolev_inner_direct(p, q_fn, d, quad_degree))
    a = np.array(rows)
    b = np.array(rhs)
    if idx.j == 0:
        a = a[:, 1:]
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = float(np.linalg.norm(a @ sol - b))
    pair = (0.0, float(sol[0])) if idx.j == 0 else (float(sol[0]), float(sol[1]))
    return pair, resid


# ---------------------------------------------------------------------------
# kernels


def kernel_sobolev(n: int, x, y, d: int):
    """Reproducing kernel of the degree-n space, sum of Q(x) Q(y) / H."""
    idxs = basis_indices(d, n)
    h = np.array([sobolev_norm_sq(i, d) for i in idxs])
    qx = sobolev_matrix(idxs, np.atleast_2d(x), d)
    qy = sobolev_matrix(idxs, np.atleast_2d(y), d)
    out = np.sum(qx * qy / h[:, None], axis=0)
    return float(out[0]) if np.ndim(x) == 1 and np.ndim(y) == 1 else out


def weight_normalization(mu: float, d: int) -> float:
    """c_mu with c_mu * int_B (1 - |x|^2)^mu dx = 1, from the weighted rule."""
    return 1.0 / float(ball_rule(d, 0, mu).weights.sum())


def classical_norms(mu: float, indices, d: int, quad_degree: int) -> np.ndarray:
    """A_idx = c_mu * int_B P_idx^2 W_mu, by W_mu-weighted quadrature."""
    rule = ball_rule(d, quad_degree, mu)
    c_mu = 1.0 / rule.weights.sum()
    p = classical_matrix(mu, indices, rule.points, d)
    return c_mu * (p * p) @ rule.weights


def classical_kernel(mu: float, n: int, x, y, d: int, quad_degree="auto"):
    """Reproducing kernel of the degree-n space for the weight (1-|x|^2)^mu."""
    if not mu > -1:
        raise ParameterDomainError(f"mu must exceed -1, got {mu}")
    if n < 0:
        return np.zeros(len(np.atleast_2d(x))) if np.ndim(x) > 1 else 0.0
    q = resolve_quad_degree(n, quad_degree)
    idxs = basis_indices(d, n)
    a = classical_norms(mu, idxs, d, q)
    px = classical_matrix(mu, idxs, np.atleast_2d(x), d)
    py = classical_matrix(mu, idxs, np.atleast_2d(y), d)
    out = np.sum(px * py / a[:, None], axis=0)
    return float(out[0]) if np.ndim(x) == 1 and np.ndim(y) == 1 else out


# ---------------------------------------------------------------------------
# closed-form projection through kernels


def w2_kernel_factor(d: int) -> float:
    """c_2 = 1 / int_B (1-|x|^2)^2 dx = (d+2)(d+4) / (8 vol(B^d))."""
    vol, _ = geometry_constants(d)
    return (d + 2) * (d + 4) / (8 * vol)


def boundary_correction_factor(n: int, d: int) -> float:
    """Multiplier of the boundary-harmonic correction sum: (n + d/2) / 2."""
    return (n + d / 2) / 2


def harmonic_projection(f, m: int, x, d: int, quad_degree: int):
    """Y_m f(x) = |x|^m avg_S[f(y') Z_m(x' . y')]: degree-m harmonic part of f on S."""
    f = as_function_input(f)
    pts, single = _as_points(x, d)
    srule = sphere_rule(d, quad_degree)
    fs = _checked_values(f, srule.points)
    _, omega = geometry_constants(d)
    r = np.linalg.norm(pts, axis=1)
    unit = np.where(r[:, None] > 0, pts / np.where(r > 0, r, 1)[:, None], np.eye(d)[0])
    z = gegenbauer_kernel_factor(d, m, unit @ srule.points.T)
    out = r ** m * (z @ (srule.weights * fs)) / omega
    return float(out[0]) if single else out


def proj_corollary(f, n: int, x, d: int, quad_degree="auto"):
    """proj_n f(x) through the W_2 kernel and boundary harmonic projections.

        Y_n f(x)
        + (1-|x|^2) c_2 int_B f(y) (1-|y|^2) K_{n-2}(W_2; x, y) dy
        - (n + d/2)/2 (1-|x|^2) sum_{j>=1} P_{j-1}^(2,b_j)(2|x|^2-1) / P_{j-1}^(2,b_j)(1)
                                         * Y_{n-2j} f(x)
    """
    f = as_function_input(f)
    q = resolve_quad_degree(n, quad_degree)
    pts, single = _as_points(x, d)
    r2 = np.sum(pts * pts, axis=1)
    out = np.asarray(harmonic_projection(f, n, pts, d, q), dtype=float).copy()
    if n >= 2:
        brule = ball_rule(d, q)
        fb = _checked_values(f, brule.points)
        yr2 = np.sum(brule.points ** 2, axis=1)
        idxs = basis_indices(d, n - 2)
        a = classical_norms(2, idxs, d, q)
        pb = classical_matrix(2, idxs, brule.points, d)
        px = classical_matrix(2, idxs, pts, d)
        proj_coef = pb @ (brule.weights * fb * (1 - yr2)) / a
        out += (1 - r2) * w2_kernel_factor(d) * (proj_coef @ px)
        corr = np.zeros(len(pts))
        for j in range(1, n // 2 + 1):
            b = n - 2 * j + (d - 2) / 2
            ratio = jacobi_eval(2, b, j - 1, 2 * r2 - 1) / jacobi_endpoint(2, b, j - 1)
            corr += ratio * harmonic_projection(f, n - 2 * j, pts, d, q)
        out -= boundary_correction_factor(n, d) * (1 - r2) * corr
    return float(out[0]) if single else out


def sphere_harmonic_coefficients(f, d: int, max_degree: int, quad_degree="auto") -> dict:
    """avg_S(f Y_nu^m) for all m <= max_degree, keyed by (m, nu)."""
    f = as_function_input(f)
    q = resolve_quad_degree(max_degree, quad_degree)
    srule = sphere_rule(d, q)
    _, omega = geometry_constants(d)
    fs = _checked_values(f, srule.points)
    out = {}
    for m in range(max_degree + 1):
        vals = solid_harmonics(d, m, srule.points) @ (srule.weights * fs) / omega
        for nu in range(1, harmonic_dim(d, m) + 1):
            out[(m, nu)] = float(vals[nu - 1])
    return out


def calibration_report(d: int, quad_degree: int = 30) -> list[dict]:
    """Constants used by the library next to the uncorrected variants.

    Each row gives the value used, an alternative normalization that is
    sometimes quoted, and a quadrature measurement of the true value.
    """
    vol, omega = geometry_constants(d)
    rows = []
    idx = BasisIndex(4, 1, 1)
    measured = sobolev_inner_direct(basis_function(idx, d), basis_function(idx, d), d, quad_degree)
    rows.append({"name": "norm_sq(n=4,j=1)", "used": sobolev_norm_sq(idx, d),
                 "alternative": 4 * sobolev_norm_sq(idx, d), "measured": measured})
    (a, b), _ = calibrate_fourier_constants(idx, d, quad_degree)
    ua, ub = fourier_constants(idx, d)
    rows.append({"name": "ball multiplier(n=4,j=1)", "used": ua, "alternative": 2 * ua,
                 "measured": a})
    rows.append({"name": "surface multiplier(n=4,j=1)", "used": ub, "alternative": 2 * ub,
                 "measured": b})
    (_, s0), _ = calibrate_fourier_constants(BasisIndex(2, 0, 1), d, quad_degree)
    omega_d = geometry_constants(d + 1)[1]
    rows.append({"name": "surface multiplier(n=2,j=0)", "used": (d + 4) / (d * omega),
                 "alternative": (d + 4) / (d * omega_d), "measured": s0})
    w2 = ball_rule(d, 0, 2).weights.sum()
    rows.append({"name": "W2 kernel factor", "used": w2_kernel_factor(d),
                 "alternative": 4 / (comb(d, 2) * vol), "measured": float(1 / w2)})
    return rows


__all__ = [
    "CoefficientVector", "resolve_quad_degree", "basis_function",
    "sobolev_inner_direct", "fourier_constants", "derivative_free_coefficients",
    "coeff_derivative_free", "expand", "project_n", "calibrate_fourier_constants",
    "kernel_sobolev", "weight_normalization", "classical_norms",
    "classical_kernel", "w2_kernel_factor", "boundary_correction_factor",
    "harmonic_projection", "proj_corollary", "sphere_harmonic_coefficients",
    "calibration_report",
]
