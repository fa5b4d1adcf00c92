import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hrg.errors import DomainError
from hrg.model import (
    ModelParams,
    VertexPosition,
    a_factor,
    approx_distance,
    exact_distance,
    hyperbolic_distance,
    pair_geometry,
    relative_angle,
    theta_hat,
)
from hrg.model.geometry import TWO_PI, asinh_exp, log_sinh
from hrg.sampler import SampleSeed, sample_positions

PARAMS = ModelParams(10_000, 1.0, 1.0, 2.0)

radii = st.floats(0.0, PARAMS.radius)
angles = st.floats(0.0, TWO_PI)


def test_log_sinh_and_asinh_exp():
    x = np.array([1e-12, 1e-3, 0.5, 3.0, 40.0])
    np.testing.assert_allclose(log_sinh(x), np.log(np.sinh(x)), rtol=1e-13)
    assert log_sinh(0.0) == -np.inf
    h = np.array([-30.0, -1.0, 0.0, 5.0, 19.9, 20.1, 30.0])
    np.testing.assert_allclose(asinh_exp(h), np.arcsinh(np.exp(h)), rtol=1e-14)
    assert asinh_exp(800.0) == pytest.approx(800.0 + math.log(2.0), rel=1e-15)
    assert asinh_exp(-np.inf) == 0.0


def test_relative_angle_folds():
    np.testing.assert_allclose(
        relative_angle([0.0, 0.1, 6.0, math.pi], [0.0, TWO_PI - 0.1, 0.5, 0.0]),
        [0.0, 0.2, TWO_PI - 5.5, math.pi],
        atol=1e-15,
    )


def test_identical_points_and_origin():
    u = VertexPosition.from_polar(4.0, 2.0, PARAMS)
    assert exact_distance(u, u, PARAMS) == 0.0
    o1 = VertexPosition.from_polar(0.0, 1.0, PARAMS)
    o2 = VertexPosition.from_polar(0.0, 4.0, PARAMS)
    assert exact_distance(o1, o2, PARAMS) == 0.0


def test_opposite_points_add_radii():
    # cosh d = cosh²5 + sinh²5 = cosh 10
    u = VertexPosition.from_polar(5.0, 0.0, PARAMS)
    v = VertexPosition.from_polar(5.0, math.pi, PARAMS)
    assert exact_distance(u, v, PARAMS) == pytest.approx(10.0, rel=1e-13)


def test_matches_law_of_cosines_at_moderate_radii():
    rng = np.random.default_rng(3)
    r_u, r_v = rng.uniform(0.1, 8.0, 500), rng.uniform(0.1, 8.0, 500)
    th_u, th_v = rng.uniform(0, TWO_PI, 500), rng.uniform(0, TWO_PI, 500)
    arg = np.cosh(r_u) * np.cosh(r_v) - np.sinh(r_u) * np.sinh(r_v) * np.cos(th_u - th_v)
    expected = np.arccosh(np.maximum(arg, 1.0))
    got = hyperbolic_distance(r_u, th_u, r_v, th_v, 1.0)
    np.testing.assert_allclose(got, expected, rtol=1e-8, atol=1e-6)


@given(radii, angles, radii, angles)
def test_symmetric_to_the_last_digit(r_u, th_u, r_v, th_v):
    assert hyperbolic_distance(r_u, th_u, r_v, th_v, 1.0) == hyperbolic_distance(
        r_v, th_v, r_u, th_u, 1.0
    )


@settings(max_examples=50)
@given(st.floats(0.01, 6.0))
def test_rotation_invariance(shift):
    positions = sample_positions(ModelParams(4000, 1.0, 1.0, 2.0), SampleSeed(11), workers=1)
    r, theta = positions.r, positions.theta
    # Rounding of the shifted angles is amplified as 1/θ for nearly aligned pairs
    apart = relative_angle(theta[:2000], theta[2000:]) >= 1e-3
    r_u, r_v = r[:2000][apart], r[2000:][apart]
    th_u, th_v = theta[:2000][apart], theta[2000:][apart]
    d = hyperbolic_distance(r_u, th_u, r_v, th_v, 1.0)
    rotated = hyperbolic_distance(r_u, (th_u + shift) % TWO_PI, r_v, (th_v + shift) % TWO_PI, 1.0)
    np.testing.assert_allclose(rotated, d, rtol=1e-12)


def test_triangle_inequality():
    params = ModelParams(30_000, 1.0, 1.0, 2.0)
    pos = sample_positions(params, SampleSeed(5), workers=1)
    r, th = pos.r, pos.theta
    u, v, w = slice(0, 10_000), slice(10_000, 20_000), slice(20_000, 30_000)
    d_uw = hyperbolic_distance(r[u], th[u], r[w], th[w], 1.0)
    d_uv = hyperbolic_distance(r[u], th[u], r[v], th[v], 1.0)
    d_vw = hyperbolic_distance(r[v], th[v], r[w], th[w], 1.0)
    assert (d_uw <= d_uv + d_vw + 1e-9).all()


def test_distance_from_origin_is_radius():
    pos = sample_positions(PARAMS, SampleSeed(2), workers=1)
    d = hyperbolic_distance(pos.r, pos.theta, 0.0, 0.0, PARAMS.zeta)
    np.testing.assert_allclose(d, pos.r, rtol=1e-12)


def test_curvature_scales_distance():
    d1 = hyperbolic_distance(3.0, 0.0, 4.0, 1.0, 1.0)
    d2 = hyperbolic_distance(1.5, 0.0, 2.0, 1.0, 2.0)
    assert d2 == pytest.approx(d1 / 2.0, rel=1e-14)


def test_approx_distance_examples():
    u = VertexPosition.from_type(0.0, 0.0, PARAMS)
    v = VertexPosition.from_type(0.0, math.pi, PARAMS)
    assert approx_distance(u, v, PARAMS) == 2.0 * PARAMS.radius

    u = VertexPosition.from_type(1.0, 0.0, PARAMS)
    v = VertexPosition.from_type(1.0, math.pi / 2, PARAMS)
    expected = 2.0 * PARAMS.radius - 2.0 + 2.0 * math.log(math.sqrt(2.0) / 2.0)
    assert approx_distance(u, v, PARAMS) == pytest.approx(expected, rel=1e-14)
    assert approx_distance(u, v, PARAMS) == pytest.approx(exact_distance(u, v, PARAMS), abs=1e-9)


def test_approx_distance_rejects_zero_angle():
    u = VertexPosition.from_type(1.0, 2.0, PARAMS)
    with pytest.raises(DomainError):
        approx_distance(u, u, PARAMS)


def test_approx_distance_increases_with_angle():
    u = VertexPosition.from_type(2.0, 0.0, PARAMS)
    values = [
        approx_distance(u, VertexPosition.from_type(2.0, th, PARAMS), PARAMS)
        for th in np.linspace(1e-6, math.pi, 200)
    ]
    assert (np.diff(values) > 0).all()


@pytest.mark.parametrize("n", [1_000, 10_000, 100_000])
def test_approx_error_scales_as_squared_angle_ratio(n):
    params = ModelParams(n, 1.0, 1.0, 2.0)
    pos = sample_positions(params, SampleSeed(9), workers=1)
    r = pos.r[pos.r >= 2.0]
    r_u, r_v = r[: r.size // 2], r[r.size // 2 : 2 * (r.size // 2)]
    hat = np.sqrt(np.exp(-2.0 * r_u) + np.exp(-2.0 * r_v))
    scale = np.logspace(0, 2, r_u.size)
    theta = 100.0 * hat * scale
    keep = theta <= 0.5
    r_u, r_v, hat, theta = r_u[keep], r_v[keep], hat[keep], theta[keep]
    exact = hyperbolic_distance(r_u, 0.0, r_v, theta, 1.0)
    approx = r_u + r_v + 2.0 * np.log(np.sin(0.5 * theta))
    c = np.abs(exact - approx) / (hat / theta) ** 2
    # The leading error term is 4 (θ̂/θ)²/ζ for small angles
    assert 3.5 < c.max() < 4.5


def test_pair_geometry_examples():
    origin = VertexPosition.from_type(PARAMS.radius, 1.0, PARAMS)
    g = pair_geometry(origin, origin, PARAMS)
    assert g.distance == 0.0
    assert g.a_factor == pytest.approx(1.0 / PARAMS.n_vertices, rel=1e-12)

    u = VertexPosition.from_type(0.0, 1.0, PARAMS)
    v = VertexPosition.from_type(0.0, 2.5, PARAMS)
    g = pair_geometry(u, v, PARAMS)
    assert g.a_factor == pytest.approx(PARAMS.n_vertices, rel=1e-12)
    assert g.rel_angle == pytest.approx(1.5, rel=1e-15)
    assert g.theta_hat == pytest.approx(math.sqrt(2.0) * math.exp(-PARAMS.radius), rel=1e-12)
    assert g.distance == exact_distance(u, v, PARAMS)


def test_a_factor_and_theta_hat_vectorise():
    t = np.array([0.0, 1.0, 2.0])
    np.testing.assert_allclose(
        a_factor(t, t, PARAMS), PARAMS.n_vertices * np.exp(-t), rtol=1e-12
    )
    np.testing.assert_allclose(
        theta_hat(t, 0.0, PARAMS),
        np.sqrt(np.exp(-2.0 * (PARAMS.radius - t)) + np.exp(-2.0 * PARAMS.radius)),
        rtol=1e-12,
    )
