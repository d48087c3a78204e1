"""Function inputs and the built-in registry of test functions.

Each registry entry is a sympy expression in x1..xd; values and the lifted
Laplacian Delta[(1 - |x|^2) f] are generated symbolically and lambdified.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import sympy as sp


class CapabilityError(TypeError):
    """A function input lacks the lifted Laplacian required by an operation."""


@dataclass(frozen=True)
class FunctionInput:
    """A function on the ball given by vectorized callables on (npts, d) arrays.

    ``lifted_laplacian`` is optional and returns Delta[(1 - |x|^2) f](x).
    """

    value: Callable[[np.ndarray], np.ndarray]
    lifted_laplacian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = "<anonymous>"

    def __call__(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.broadcast_to(np.asarray(self.value(x), dtype=float), (len(x),))

    def lift(self, x):
        if self.lifted_laplacian is None:
            raise CapabilityError(f"{self.name} does not provide a lifted Laplacian")
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.broadcast_to(np.asarray(self.lifted_laplacian(x), dtype=float), (len(x),))


def as_function_input(f) -> FunctionInput:
    if isinstance(f, FunctionInput):
        return f
    if callable(f):
        return FunctionInput(value=f, name=getattr(f, "__name__", "<callable>"))
    raise TypeError(f"expected a callable or FunctionInput, got {type(f).__name__}")


def _symbols(d):
    return sp.symbols(f"x1:{d + 1}", real=True)


def _laplacian(expr, xs):
    return sum(sp.diff(expr, x, 2) for x in xs)


def _lambdify(expr, xs):
    fn = sp.lambdify(xs, expr, "numpy")

    def call(x):
        x = np.atleast_2d(x)
        return np.broadcast_to(np.asarray(fn(*x.T), dtype=float), (len(x),))
    return call


def from_sympy(builder, d: int, name: str = "<sympy>") -> FunctionInput:
    """Build a two-tier FunctionInput from ``builder(xs) -> sympy expression``."""
    xs = _symbols(d)
    expr = sp.sympify(builder(xs))
    r2 = sum(x ** 2 for x in xs)
    lifted = sp.simplify(_laplacian((1 - r2) * expr, xs))
    return FunctionInput(_lambdify(expr, xs), _lambdify(lifted, xs), name)


def _r2(xs):
    return sum(x ** 2 for x in xs)


# name -> builder(xs)
REGISTRY = {
    "one": lambda xs: sp.Integer(1),
    "one_minus_r2": lambda xs: 1 - _r2(xs),
    "harmonic_31": lambda xs: xs[0] ** 3 - 3 * xs[0] * xs[1] ** 2,
    "exp_x1": lambda xs: sp.exp(xs[0]),
    "gaussian": lambda xs: sp.exp(-_r2(xs)),
    "poly_mixed": lambda xs: xs[0] ** 2 * xs[1] + sp.Rational(1, 2) * xs[1] ** 4
    - sp.Rational(3, 10) * xs[0] + sp.Rational(1, 5),
    "cos_sum": lambda xs: sp.cos(xs[0] + 2 * xs[1]),
    "rational": lambda xs: 1 / (3 - xs[0] - xs[1]),
    "exp_mix": lambda xs: xs[1] * sp.exp(sp.Rational(1, 2) * xs[0] - sp.Rational(3, 10) * xs[1]),
    "sin_prod": lambda xs: sp.sin(2 * xs[0]) * sp.cos(xs[1]),
    "gaussian_bump": lambda xs: sp.exp(-4 * ((xs[0] - sp.Rational(1, 4)) ** 2 + xs[1] ** 2)),
}

# ten smooth functions used for the derivative-free coefficient checks
SMOOTH_FUNCTIONS = (
    "one", "one_minus_r2", "harmonic_31", "exp_x1", "gaussian",
    "poly_mixed", "cos_sum", "rational", "exp_mix", "sin_prod",
)


def get_function(name: str, d: int) -> FunctionInput:
    try:
        builder = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; choose from {sorted(REGISTRY)}") from None
    return from_sympy(builder, d, name)


# ---------------------------------------------------------------------------
# Poisson problems: -Delta u = g on the ball, u = 0 on the sphere


@dataclass(frozen=True)
class PoissonCase:
    name: str
    rhs: FunctionInput
    exact: Optional[Callable[[np.ndarray], np.ndarray]] = None


def _manufactured(builder, d, name):
    xs = _symbols(d)
    u = sp.sympify(builder(xs))
    g = sp.simplify(-_laplacian(u, xs))
    return PoissonCase(name, FunctionInput(_lambdify(g, xs), name=f"{name}:rhs"),
                       _lambdify(u, xs))


POISSON_PROBLEMS = {
    # u = (1 - |x|^2) e^{x1}
    "manufactured_exp": lambda d: _manufactured(lambda xs: (1 - _r2(xs)) * sp.exp(xs[0]), d,
                                                "manufactured_exp"),
    # g = 2d gives u = 1 - |x|^2
    "constant_rhs_4": lambda d: _manufactured(lambda xs: 1 - _r2(xs), d, "constant_rhs_4"),
    "zero_rhs": lambda d: PoissonCase("zero_rhs", FunctionInput(lambda x: np.zeros(len(x)),
                                                                name="zero"),
                                      lambda x: np.zeros(len(x))),
    # no closed-form solution; residual-only
    "gaussian_rhs": lambda d: PoissonCase("gaussian_rhs", get_function("gaussian_bump", d)),
}


def get_poisson_problem(name: str, d: int) -> PoissonCase:
    try:
        return POISSON_PROBLEMS[name](d)
    except KeyError:
        raise KeyError(f"unknown Poisson problem {name!r}; "
                       f"choose from {sorted(POISSON_PROBLEMS)}") from None


__all__ = [
    "CapabilityError", "FunctionInput", "as_function_input", "from_sympy",
    "REGISTRY", "SMOOTH_FUNCTIONS", "get_function", "PoissonCase",
    "POISSON_PROBLEMS", "get_poisson_problem",
]
