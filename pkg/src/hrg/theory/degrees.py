"""Degree predictions: E[D_u | t_u], the asymptotic angle average and the Chung-Lu kernel."""

from __future__ import annotations

import math

import numpy as np

from ..config import Regime
from ..model.geometry import a_factor, theta_hat
from ..model.params import ModelParams
from .constants import c_beta, regime_constants, require_cold


def edge_probability_given_type(t_u: np.ndarray | float, params: ModelParams):
    """q(t_u) = P(u ~ v | t_u) for a uniformly placed v.

    Cold: K e^{ζt/2}/N. Critical: K (R − t) e^{ζt/2}/N. Hot: K (e^{ζt/2}/N)^β.
    """
    constants = regime_constants(params)
    t = np.asarray(t_u, dtype=np.float64)
    n, k = params.n_vertices, constants.k_const
    weight = np.exp(0.5 * params.zeta * t)
    match constants.regime:
        case Regime.COLD:
            q = k * weight / n
        case Regime.CRITICAL:
            q = k * (params.radius - t) * weight / n
        case Regime.HOT:
            q = k * (weight / n) ** params.beta
    return float(q) if q.ndim == 0 else q


def expected_degree(t_u: np.ndarray | float, params: ModelParams):
    """(N − 1) q(t_u). Only predictive for t_u ≤ x₀; callers flag anything above."""
    q = np.asarray(edge_probability_given_type(t_u, params))
    out = (params.n_vertices - 1) * q
    return float(out) if out.ndim == 0 else out


def angle_avg_probability_asymptotic(t_u: float, t_v: float, params: ModelParams) -> float:
    """Leading term of p̂: C_β/A (cold), C_β ln A/A (critical), C_β/A^β (hot)."""
    c = c_beta(params)
    log_a = 0.5 * params.zeta * (params.radius - t_u - t_v)
    if params.disc or params.regime is Regime.COLD:
        return c * math.exp(-log_a)
    if params.regime is Regime.CRITICAL:
        return c * log_a * math.exp(-log_a)
    return c * math.exp(-params.beta * log_a)


def claim_ratio(t_u: np.ndarray | float, t_v: np.ndarray | float, params: ModelParams):
    """A^{−1}/θ̂: how far the crossing angle sits above the radial-dominated range."""
    out = 1.0 / (a_factor(t_u, t_v, params) * theta_hat(t_u, t_v, params))
    return float(out) if np.ndim(out) == 0 else out


def chung_lu_kernel(t_u: np.ndarray | float, t_v: np.ndarray | float, params: ModelParams):
    """κ(t_u, t_v) = C_β e^{ζt_u/2} e^{ζt_v/2}, so κ/N is the angle-averaged edge probability.

    κ(0, 0) is the prefactor C_β, not K: the factor 2α/(2α − ζ) that turns C_β
    into K comes from averaging κ over t_v, so a type-t vertex still expects
    about K e^{ζt/2} neighbours.
    """
    c = require_cold(params, "chung_lu_kernel").c_beta
    half = 0.5 * params.zeta
    out = c * np.exp(half * np.asarray(t_u, dtype=np.float64)) * np.exp(
        half * np.asarray(t_v, dtype=np.float64)
    )
    return float(out) if out.ndim == 0 else out
