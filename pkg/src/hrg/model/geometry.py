"""Hyperbolic geometry in the native representation (curvature −ζ²).

Distances use the half-angle form of the hyperbolic law of cosines,

    sinh²(ζd/2) = sinh²(ζ(r_u − r_v)/2) + sinh(ζr_u) sinh(ζr_v) sin²(θ/2),

which is the law of cosines rewritten with cosh x − 1 = 2 sinh²(x/2). Its
right-hand side is a sum of non-negative terms, so there is no cancellation
for near-coincident points, and evaluating it in the log domain keeps
R ≈ (4/ζ) ln N free of overflow.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from .params import ModelParams, PairGeometry, VertexPosition

LN2 = math.log(2.0)
TWO_PI = 2.0 * math.pi

# Above this argument asinh(e^h) is evaluated as h + log1p(√(1 + e^{−2h}))
_ASINH_SPLIT = 20.0


def log_sinh(x: np.ndarray | float) -> np.ndarray:
    """ln sinh(x) for x ≥ 0, exact to rounding for tiny and huge x (−inf at 0)."""
    x = np.asarray(x, dtype=np.float64)
    with np.errstate(divide="ignore"):
        return x + np.log(-np.expm1(-2.0 * x)) - LN2


def asinh_exp(h: np.ndarray | float) -> np.ndarray:
    """asinh(e^h) without overflowing for large h (0 at h = −inf)."""
    h = np.asarray(h, dtype=np.float64)
    low = np.arcsinh(np.exp(np.minimum(h, _ASINH_SPLIT)))
    high_h = np.maximum(h, _ASINH_SPLIT)
    high = high_h + np.log1p(np.sqrt(1.0 + np.exp(-2.0 * high_h)))
    return np.where(h < _ASINH_SPLIT, low, high)


def relative_angle(theta_u: np.ndarray | float, theta_v: np.ndarray | float) -> np.ndarray:
    """Angular difference folded into [0, π]."""
    diff = np.abs(np.asarray(theta_u, dtype=np.float64) - theta_v) % TWO_PI
    return np.minimum(diff, TWO_PI - diff)


def log_sinh2_half_distance(
    r_u: np.ndarray, r_v: np.ndarray, rel_angle: np.ndarray, zeta: float
) -> np.ndarray:
    """ln sinh²(ζd/2) from radii and the folded relative angle."""
    radial = 2.0 * log_sinh(0.5 * zeta * np.abs(np.subtract(r_u, r_v)))
    with np.errstate(divide="ignore"):
        angular = (
            log_sinh(zeta * np.asarray(r_u))
            + log_sinh(zeta * np.asarray(r_v))
            + 2.0 * np.log(np.sin(0.5 * np.asarray(rel_angle)))
        )
    return np.logaddexp(radial, angular)


def hyperbolic_distance(
    r_u: np.ndarray | float,
    theta_u: np.ndarray | float,
    r_v: np.ndarray | float,
    theta_v: np.ndarray | float,
    zeta: float,
) -> np.ndarray:
    """Vectorised exact distance d(u, v); symmetric bit for bit in (u, v)."""
    rel = relative_angle(theta_u, theta_v)
    log_q = log_sinh2_half_distance(r_u, r_v, rel, zeta)
    return (2.0 / zeta) * asinh_exp(0.5 * log_q)


def exact_distance(u: VertexPosition, v: VertexPosition, params: ModelParams) -> float:
    """Exact hyperbolic distance between two positions."""
    return float(hyperbolic_distance(u.r, u.theta, v.r, v.theta, params.zeta))


def approx_distance(u: VertexPosition, v: VertexPosition, params: ModelParams) -> float:
    """Asymptotic distance 2R − t_u − t_v + (2/ζ) ln sin(θ/2).

    Only meaningful when θ_{u,v} ≫ θ̂_{u,v}; checking that is the caller's job.
    """
    rel = float(relative_angle(u.theta, v.theta))
    if rel <= 0.0:
        raise DomainError("[theory] approx_distance is undefined at relative angle 0")
    return (
        2.0 * params.radius
        - u.t
        - v.t
        + (2.0 / params.zeta) * math.log(math.sin(0.5 * rel))
    )


def a_factor(t_u: np.ndarray | float, t_v: np.ndarray | float, params: ModelParams):
    """A(t_u, t_v) = exp((ζ/2)(R − t_u − t_v))."""
    return np.exp(0.5 * params.zeta * (params.radius - np.add(t_u, t_v)))


def theta_hat(t_u: np.ndarray | float, t_v: np.ndarray | float, params: ModelParams):
    """θ̂ = (e^{−2ζ(R−t_u)} + e^{−2ζ(R−t_v)})^{1/2}."""
    zeta, radius = params.zeta, params.radius
    return np.sqrt(
        np.exp(-2.0 * zeta * (radius - np.asarray(t_u)))
        + np.exp(-2.0 * zeta * (radius - np.asarray(t_v)))
    )


def pair_geometry(u: VertexPosition, v: VertexPosition, params: ModelParams) -> PairGeometry:
    return PairGeometry(
        distance=exact_distance(u, v, params),
        rel_angle=float(relative_angle(u.theta, v.theta)),
        a_factor=float(a_factor(u.t, v.t, params)),
        theta_hat=float(theta_hat(u.t, v.t, params)),
    )
