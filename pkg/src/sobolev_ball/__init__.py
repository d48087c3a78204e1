"""Sobolev orthogonal polynomials on the unit ball.

Explicit basis construction and verification, derivative-free expansion
coefficients, reproducing kernels, and a diagonal least-squares Poisson
solver on the disk and the 3-ball.
"""

__version__ = "0.1.0"

from .ball_basis import (  # noqa: E402
    BasisIndex,
    all_indices,
    basis_indices,
    classical_basis_eval,
    laplacian_lift,
    sobolev_basis_eval,
    sobolev_norm_sq,
)
from .estimators import PoissonSolver, SobolevExpansion, SobolevFeatures  # noqa: E402
from .expansion import (  # noqa: E402
    CoefficientVector,
    coeff_derivative_free,
    expand,
    kernel_sobolev,
    proj_corollary,
    sobolev_inner_direct,
)
from .functions import FunctionInput, get_function  # noqa: E402
from .poisson import PoissonProblem, solve_poisson  # noqa: E402

__all__ = [
    "BasisIndex", "all_indices", "basis_indices", "classical_basis_eval",
    "laplacian_lift", "sobolev_basis_eval", "sobolev_norm_sq",
    "PoissonSolver", "SobolevExpansion", "SobolevFeatures",
    "CoefficientVector", "coeff_derivative_free", "expand", "kernel_sobolev",
    "proj_corollary", "sobolev_inner_direct", "FunctionInput", "get_function",
    "PoissonProblem", "solve_poisson",
]
