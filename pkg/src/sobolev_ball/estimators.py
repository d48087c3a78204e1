"""scikit-learn style wrappers around the basis, expansion and Poisson solver."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .ball_basis import all_indices, sobolev_matrix
from .expansion import expand, resolve_quad_degree
from .functions import FunctionInput, as_function_input, get_function
from .harmonics import SUPPORTED_DIMS
from .poisson import PoissonProblem, solve_poisson

_BALL_TOL = 1e-12


def check_ball_points(X, dim=None):
    """Validate an (n_samples, d) array of points inside the closed unit ball."""
    X = check_array(X, dtype=np.float64, ensure_min_samples=1)
    d = X.shape[1]
    if d not in SUPPORTED_DIMS:
        raise ValueError(f"points must have {SUPPORTED_DIMS} coordinates, got {d}")
    if dim is not None and d != dim:
        raise ValueError(f"X has {d} coordinates but the estimator expects {dim}")
    r = np.linalg.norm(X, axis=1)
    if np.any(r > 1 + _BALL_TOL):
        raise ValueError(f"points must lie in the unit ball; max |x| = {r.max():.6g}")
    return X


def _check_dim(dim):
    if dim not in SUPPORTED_DIMS:
        raise ValueError(f"dim must be one of {SUPPORTED_DIMS}, got {dim!r}")


def _resolve_function(f, dim):
    if isinstance(f, str):
        return get_function(f, dim)
    return as_function_input(f)


class SobolevFeatures(TransformerMixin, BaseEstimator):
    """Map points of the ball to Sobolev basis values Q_{j,nu}^n(x), n <= degree.

    Parameters
    ----------
    degree : int
        Largest total degree included.
    normalize : bool
        Divide each column by the square root of its Sobolev norm.
    """

    def __init__(self, degree=4, normalize=True):
        self.degree = degree
        self.normalize = normalize

    def fit(self, X, y=None):
        X = check_ball_points(X)
        if int(self.degree) < 0:
            raise ValueError("degree must be >= 0")
        self.n_features_in_ = X.shape[1]
        self.indices_ = all_indices(self.n_features_in_, int(self.degree))
        return self

    def transform(self, X):
        check_is_fitted(self, "indices_")
        X = check_ball_points(X, self.n_features_in_)
        return sobolev_matrix(self.indices_, X, self.n_features_in_,
                              normalized=self.normalize).T

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "indices_")
        return np.array([f"Q_{i.n}_{i.j}_{i.nu}" for i in self.indices_], dtype=object)


class SobolevExpansion(BaseEstimator):
    """Truncated Sobolev series of a function, from its values only.

    ``fit`` takes the function (a callable on (npts, d) arrays, a
    :class:`FunctionInput`, or a registry name); ``predict`` evaluates the
    truncated series.
    """

    def __init__(self, dim=2, degree=8, quad_degree="auto"):
        self.dim = dim
        self.degree = degree
        self.quad_degree = quad_degree

    def fit(self, f, y=None):
        _check_dim(self.dim)
        fn = _resolve_function(f, self.dim)
        self.quad_degree_ = resolve_quad_degree(self.degree, self.quad_degree)
        self.coef_ = expand(fn, self.dim, int(self.degree), self.quad_degree_)
        self.function_ = fn
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_ball_points(X, self.dim)
        return self.coef_.evaluate(X)

    def project(self, X, n):
        check_is_fitted(self, "coef_")
        return self.coef_.project(n, check_ball_points(X, self.dim))

    def score(self, X, y=None):
        """Negative max abs deviation from the fitted function at ``X``."""
        check_is_fitted(self, "coef_")
        X = check_ball_points(X, self.dim)
        target = self.function_(X) if y is None else np.asarray(y, dtype=float)
        return -float(np.max(np.abs(self.predict(X) - target)))


class PoissonSolver(BaseEstimator):
    """Least-squares spectral solver for -Delta u = rhs, u = 0 on the sphere."""

    def __init__(self, dim=2, degree=10, quad_degree="auto"):
        self.dim = dim
        self.degree = degree
        self.quad_degree = quad_degree

    def fit(self, rhs, y=None):
        _check_dim(self.dim)
        fn = rhs if isinstance(rhs, FunctionInput) else _resolve_function(rhs, self.dim)
        problem = PoissonProblem(self.dim, fn, int(self.degree), self.quad_degree)
        self.solution_ = solve_poisson(problem)
        self.coef_ = self.solution_.coeffs
        self.residual_l2_ = self.solution_.residual_l2
        return self

    def predict(self, X):
        check_is_fitted(self, "solution_")
        return self.solution_.evaluate(check_ball_points(X, self.dim))


__all__ = ["check_ball_points", "SobolevFeatures", "SobolevExpansion", "PoissonSolver"]
