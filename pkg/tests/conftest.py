import numpy as np
import pytest


def random_ball(rng, npts, d, radius=0.9):
    """Uniform-ish interior points with |x| <= radius."""
    x = rng.standard_normal((npts, d))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x * radius * rng.random((npts, 1)) ** (1 / d)


def random_sphere(rng, npts, d):
    x = rng.standard_normal((npts, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def fd_laplacian(fn, pts, h=1e-4):
    """Central second differences summed over coordinates."""
    pts = np.atleast_2d(pts)
    base = fn(pts)
    out = np.zeros(len(pts))
    for k in range(pts.shape[1]):
        e = np.zeros(pts.shape[1])
        e[k] = h
        out += fn(pts + e) - 2 * base + fn(pts - e)
    return out / h ** 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
