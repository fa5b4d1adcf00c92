"""Fermi-Dirac connection probability and the edge rule built on it."""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from .params import ModelParams


def connection_probability(d: np.ndarray | float, params: ModelParams):
    """p = 1 / (exp(β(ζ/2)(d − R)) + 1), or its β → ∞ limit under `params.disc`.

    `expit` evaluates the logistic through exp of a non-positive argument only,
    so |d − R| up to ±2R neither overflows nor loses the tail (it underflows
    cleanly to 0.0). The disc limit is 1 below R, 0 above and 1/2 at d = R.
    """
    d = np.asarray(d, dtype=np.float64)
    if params.disc:
        radius = params.radius
        p = np.where(d < radius, 1.0, np.where(d > radius, 0.0, 0.5))
    else:
        p = expit(-0.5 * params.beta * params.zeta * (d - params.radius))
    return float(p) if p.ndim == 0 else p


def edge_present(d: np.ndarray, uniforms: np.ndarray, params: ModelParams) -> np.ndarray:
    """Threshold rule u_ij < p_ij; the disc model keeps only strict d < R."""
    if params.disc:
        return np.asarray(d) < params.radius
    return np.asarray(uniforms) < connection_probability(d, params)
