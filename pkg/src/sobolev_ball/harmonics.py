"""Real spherical harmonics for d = 2, 3 and dimension-free kernel quantities.

Normalization is with respect to the averaged surface measure,
``(1/omega_{d-1}) * integral over S^{d-1}``, so the constant harmonic is 1.

Enumeration of nu (1-based):

* d = 2, n = 0: nu = 1 is the constant 1.
* d = 2, n >= 1: nu = 1 -> sqrt(2) r^n cos(n theta), nu = 2 -> sqrt(2) r^n sin(n theta).
* d = 3: nu = 1 is the zonal (m = 0) function, then cos(m phi), sin(m phi)
  pairs for m = 1..n, i.e. nu = 2m and nu = 2m + 1.

Solid harmonics are evaluated as polynomials (no division by |x|), so the
origin needs no special case.  Associated Legendre functions carry no
Condon-Shortley phase.
"""
from __future__ import annotations

from math import comb, factorial, sqrt

import numpy as np

from .polynomials import gegenbauer_kernel_factor

SUPPORTED_DIMS = (2, 3)


class HarmonicIndexError(IndexError):
    pass


def harmonic_dim(d: int, n: int) -> int:
    """Dimension sigma_n of the space of degree-n harmonics in d variables."""
    if d < 2 or n < 0:
        raise ValueError(f"need d >= 2 and n >= 0, got d={d}, n={n}")
    second = comb(n + d - 3, d - 1) if n >= 2 else 0
    return comb(n + d - 1, d - 1) - second


def _as_points(x, d):
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    if x.shape[1] != d:
        raise ValueError(f"expected points with {d} coordinates, got shape {x.shape}")
    return x, single


def _check_index(d, n, nu):
    if d not in SUPPORTED_DIMS:
        raise ValueError(f"explicit harmonic bases exist for d in {SUPPORTED_DIMS}, got {d}")
    if n < 0:
        raise HarmonicIndexError(f"degree must be >= 0, got {n}")
    sigma = harmonic_dim(d, n)
    if not 1 <= nu <= sigma:
        raise HarmonicIndexError(f"nu={nu} outside [1, {sigma}] for d={d}, n={n}")


def _solid_block_2d(n, x):
    z = (x[:, 0] + 1j * x[:, 1]) ** n
    if n == 0:
        return np.ones((1, len(x)))
    return sqrt(2.0) * np.vstack([z.real, z.imag])


def _solid_block_3d(n, x):
    # r^n P_n^m(z/r) e^{i m phi} = S_n^m(z, r^2) (x + i y)^m where S is the
    # polynomial part built by the three-term recurrence in n
    xs, ys, zs = x[:, 0], x[:, 1], x[:, 2]
    r2 = xs * xs + ys * ys + zs * zs
    out = np.empty((2 * n + 1, len(x)))
    w = np.ones(len(x), dtype=complex)
    xy = xs + 1j * ys
    for m in range(n + 1):
        if m:
            w = w * xy
        # S_m^m = (2m-1)!!
        s_prev = np.zeros(len(x))
        s = np.full(len(x), float(np.prod(np.arange(1, 2 * m, 2))) if m else 1.0)
        for k in range(m + 1, n + 1):
            s_prev, s = s, ((2 * k - 1) * zs * s - (k + m - 1) * r2 * s_prev) / (k - m)
        norm = sqrt((2 * n + 1) * factorial(n - m) / factorial(n + m))
        if m == 0:
            out[0] = norm * s
        else:
            norm *= sqrt(2.0)
            out[2 * m - 1] = norm * s * w.real
            out[2 * m] = norm * s * w.imag
    return out


def solid_harmonics(d: int, n: int, x) -> np.ndarray:
    """All solid harmonics of degree n at points ``x``; shape (sigma_n, npts)."""
    if d not in SUPPORTED_DIMS:
        raise ValueError(f"explicit harmonic bases exist for d in {SUPPORTED_DIMS}, got {d}")
    pts, _ = _as_points(x, d)
    return _solid_block_2d(n, pts) if d == 2 else _solid_block_3d(n, pts)


def solid_harmonic_eval(d: int, n: int, nu: int, x):
    """|x|^n Y_nu^n(x/|x|), i.e. the homogeneous harmonic polynomial at x."""
    _check_index(d, n, nu)
    pts, single = _as_points(x, d)
    vals = solid_harmonics(d, n, pts)[nu - 1]
    return float(vals[0]) if single else vals


def sph_harmonic_eval(d: int, n: int, nu: int, xp):
    """Spherical harmonic Y_nu^n at unit vector(s) ``xp``."""
    _check_index(d, n, nu)
    pts, single = _as_points(xp, d)
    norms = np.linalg.norm(pts, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-14):
        raise ValueError("sph_harmonic_eval expects points on the unit sphere")
    vals = solid_harmonics(d, n, pts / norms[:, None])[nu - 1]
    return float(vals[0]) if single else vals


def addition_kernel(d: int, n: int, xp, yp):
    """Sum over nu of Y_nu^n(xp) Y_nu^n(yp) via the zonal Gegenbauer factor."""
    xp = np.asarray(xp, dtype=float)
    yp = np.asarray(yp, dtype=float)
    t = np.sum(xp * yp, axis=-1)
    return gegenbauer_kernel_factor(d, n, t)


__all__ = [
    "HarmonicIndexError", "SUPPORTED_DIMS", "harmonic_dim", "solid_harmonics",
    "solid_harmonic_eval", "sph_harmonic_eval", "addition_kernel",
]
