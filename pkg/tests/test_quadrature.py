import csv
import itertools
from math import gamma, pi

import numpy as np
import pytest

from sobolev_ball.quadrature import (
    DimensionError, EvaluationError, ball_rule, geometry_constants, integrate, sphere_rule,
)


def sphere_moment(alpha):
    """Exact integral of x^alpha over the unit sphere S^{d-1}."""
    if any(a % 2 for a in alpha):
        return 0.0
    b = [(a + 1) / 2 for a in alpha]
    return 2 * np.prod([gamma(v) for v in b]) / gamma(sum(b))


def ball_moment(alpha):
    return sphere_moment(alpha) / (sum(alpha) + len(alpha))


def monomials(d, deg):
    return [a for a in itertools.product(range(deg + 1), repeat=d) if sum(a) <= deg]


def test_geometry_constants():
    assert geometry_constants(2) == pytest.approx((pi, 2 * pi), rel=1e-15)
    assert geometry_constants(3) == pytest.approx((4 * pi / 3, 4 * pi), rel=1e-15)
    for d in range(2, 11):
        vol, omega = geometry_constants(d)
        assert vol == pytest.approx(omega / d, rel=1e-15)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("deg", [0, 4, 8, 16, 24])
def test_weights_positive_and_sum_to_measure(d, deg):
    vol, omega = geometry_constants(d)
    b, s = ball_rule(d, deg), sphere_rule(d, deg)
    assert np.all(b.weights > 0) and np.all(s.weights > 0)
    assert b.weights.sum() == pytest.approx(vol, rel=1e-13)
    assert s.weights.sum() == pytest.approx(omega, rel=1e-13)
    assert np.all(np.linalg.norm(b.points, axis=1) < 1)
    assert np.allclose(np.linalg.norm(s.points, axis=1), 1, atol=1e-15)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("deg", [4, 8, 16, 24])
def test_exactness_sweep(d, deg):
    vol, omega = geometry_constants(d)
    b, s = ball_rule(d, deg), sphere_rule(d, deg)
    for a in monomials(d, deg):
        fb = np.prod(b.points ** np.array(a), axis=1)
        fs = np.prod(s.points ** np.array(a), axis=1)
        eb, es = ball_moment(a), sphere_moment(a)
        assert abs(b.weights @ fb - eb) <= 1e-12 * max(abs(eb), 1e-3 * vol)
        assert abs(s.weights @ fs - es) <= 1e-12 * max(abs(es), 1e-3 * omega)


def test_degree_too_low_is_not_exact():
    # x1^6 needs a degree-6 rule; a degree-2 rule must miss it
    b = ball_rule(2, 2)
    assert abs(b.weights @ b.points[:, 0] ** 6 - ball_moment((6, 0))) > 1e-6


@pytest.mark.parametrize("d", [2, 3])
def test_doubling_stability(d, rng):
    for deg in (6, 10):
        coeffs = {a: rng.standard_normal() for a in monomials(d, deg)}

        def f(x):
            return sum(c * np.prod(x ** np.array(a), axis=1) for a, c in coeffs.items())

        one, two = integrate(f, ball_rule(d, deg)), integrate(f, ball_rule(d, 2 * deg))
        assert abs(one - two) <= 1e-13 * max(abs(two), 1.0)


@pytest.mark.parametrize("d", [2, 3])
def test_weighted_rule(d):
    vol, _ = geometry_constants(d)
    rule = ball_rule(d, 10, mu=2)
    # int (1-r^2)^2 r^{2k} over the ball, computed with the plain rule
    plain = ball_rule(d, 24)
    r2 = np.sum(plain.points ** 2, axis=1)
    for k in range(4):
        rr = np.sum(rule.points ** 2, axis=1)
        assert rule.weights @ rr ** k == pytest.approx(plain.weights @ ((1 - r2) ** 2 * r2 ** k), rel=1e-13)
    assert rule.weights.sum() == pytest.approx(8 * vol / ((d + 2) * (d + 4)), rel=1e-13)


def test_integrate_reports_nonfinite_point():
    rule = ball_rule(2, 4)
    bad = rule.points[3]

    def f(x):
        out = np.ones(len(x))
        out[np.all(x == bad, axis=1)] = np.nan
        return out

    with pytest.raises(EvaluationError) as err:
        integrate(f, rule)
    assert np.array_equal(err.value.point, bad)


def test_dimension_errors():
    for d in (1, 4):
        with pytest.raises(DimensionError):
            ball_rule(d, 4)
        with pytest.raises(DimensionError):
            sphere_rule(d, 4)
    with pytest.raises(DimensionError):
        geometry_constants(1)
    with pytest.raises(ValueError):
        ball_rule(2, -1)


def test_rule_is_read_only():
    rule = ball_rule(2, 4)
    with pytest.raises(ValueError):
        rule.weights[0] = 1.0


def test_to_csv_roundtrip(tmp_path):
    rule = ball_rule(3, 6)
    path = tmp_path / "rule.csv"
    rule.to_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x1", "x2", "x3", "weight"]
    data = np.array(rows[1:], dtype=float)
    assert np.array_equal(data[:, :3], rule.points)
    assert np.array_equal(data[:, 3], rule.weights)
