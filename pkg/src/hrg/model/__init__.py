"""Model parameters, native-representation geometry and the edge probability."""

from .geometry import (
    a_factor,
    approx_distance,
    exact_distance,
    hyperbolic_distance,
    pair_geometry,
    relative_angle,
    theta_hat,
)
from .params import ModelParams, PairGeometry, PositionTable, VertexPosition
from .probability import connection_probability, edge_present

__all__ = [
    "ModelParams",
    "PairGeometry",
    "PositionTable",
    "VertexPosition",
    "a_factor",
    "approx_distance",
    "connection_probability",
    "edge_present",
    "exact_distance",
    "hyperbolic_distance",
    "pair_geometry",
    "relative_angle",
    "theta_hat",
]
