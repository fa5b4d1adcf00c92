"""Closed-form regime constants C_β and K, the mixing law F and the type cutoff x₀.

`sin^{-1}(π/β)` in the cold-regime constants is the reciprocal 1/sin(π/β):
only that reading satisfies ∫₀^∞ dz/(1 + z^β) = (π/β)/sin(π/β), which
`c_beta_numeric` checks by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ..config import Regime
from ..errors import DomainError
from ..model.params import ModelParams

# C_β as β → ∞, used for the disc model
DISC_C_BETA = 2.0 / math.pi


def cold_c_beta(beta: float) -> float:
    """C_β = (2/β)/sin(π/β) for β > 1."""
    if not beta > 1.0:
        raise DomainError(f"[theory] cold-regime C_beta needs beta > 1, got {beta}")
    if math.isinf(beta):
        return DISC_C_BETA
    return (2.0 / beta) / math.sin(math.pi / beta)


def hot_c_beta(beta: float) -> float:
    """C_β = Γ((1−β)/2) / (√π Γ(1−β/2)) for 0 < β < 1."""
    if not 0.0 < beta < 1.0:
        raise DomainError(f"[theory] hot-regime C_beta needs 0 < beta < 1, got {beta}")
    return math.exp(gammaln(0.5 * (1.0 - beta)) - gammaln(1.0 - 0.5 * beta)) / math.sqrt(math.pi)


def c_beta(params: ModelParams) -> float:
    """C_β of the angle-averaged connection probability, by regime."""
    if params.disc:
        return DISC_C_BETA
    match params.regime:
        case Regime.COLD:
            return cold_c_beta(params.beta)
        case Regime.CRITICAL:
            return 2.0 / math.pi
        case Regime.HOT:
            return hot_c_beta(params.beta)


@dataclass(frozen=True)
class RegimeConstants:
    regime: Regime
    c_beta: float
    k_const: float
    # 2α/ζ + 1, cold regime only
    power_exponent: float | None

    def to_dict(self) -> dict:
        return {
            "regime": str(self.regime),
            "c_beta": self.c_beta,
            "k_const": self.k_const,
            "power_exponent": self.power_exponent,
        }


def require_theory_valid(params: ModelParams) -> None:
    if not params.theory_valid:
        raise DomainError(
            f"[theory] zeta/alpha = {params.zeta / params.alpha:g} is not below 2; "
            "the degree limit laws assume 0 < zeta/alpha < 2"
        )


def regime_constants(params: ModelParams) -> RegimeConstants:
    """C_β, K and (cold) the power-law exponent for the parameter set.

    An undefined hot-regime K is reported as such even though it also implies
    ζ/α > 2.
    """
    alpha, zeta, beta = params.alpha, params.zeta, params.beta
    regime = params.regime
    if regime is Regime.HOT and 2.0 * alpha - beta * zeta <= 0.0:
        raise DomainError(
            f"[theory] hot-regime constant undefined: 2*alpha - beta*zeta = "
            f"{2.0 * alpha - beta * zeta:g} <= 0"
        )
    require_theory_valid(params)
    c = c_beta(params)
    match regime:
        case Regime.COLD:
            k = 2.0 * alpha / (2.0 * alpha - zeta) * c
            return RegimeConstants(regime, c, k, 2.0 * alpha / zeta + 1.0)
        case Regime.CRITICAL:
            k = 2.0 * alpha * zeta / (math.pi * (2.0 * alpha - zeta))
            return RegimeConstants(regime, c, k, None)
        case Regime.HOT:
            k = 2.0 * alpha / (2.0 * alpha - beta * zeta) * c
            return RegimeConstants(regime, c, k, None)


def require_cold(params: ModelParams, what: str) -> RegimeConstants:
    """Regime constants, refusing anything but the cold regime."""
    constants = regime_constants(params)
    if constants.regime is not Regime.COLD:
        raise DomainError(f"[theory] {what} is defined in the cold regime only (beta > 1)")
    return constants


@dataclass(frozen=True)
class MixingDistribution:
    """Pareto law F(t) = 1 − (K/t)^s on [K, ∞), s = 2α/ζ."""

    k_const: float
    shape: float

    @classmethod
    def from_params(cls, params: ModelParams) -> MixingDistribution:
        constants = require_cold(params, "the mixing distribution")
        return cls(constants.k_const, 2.0 * params.alpha / params.zeta)

    @property
    def support_min(self) -> float:
        return self.k_const

    def cdf(self, t: np.ndarray | float):
        t = np.asarray(t, dtype=np.float64)
        with np.errstate(divide="ignore"):
            out = np.where(t < self.k_const, 0.0, -np.expm1(self.shape * np.log(self.k_const / t)))
        return float(out) if out.ndim == 0 else out

    def pdf(self, t: np.ndarray | float):
        t = np.asarray(t, dtype=np.float64)
        s, k = self.shape, self.k_const
        with np.errstate(divide="ignore"):
            out = np.where(t < k, 0.0, s / k * np.exp((s + 1.0) * np.log(k / t)))
        return float(out) if out.ndim == 0 else out

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Pareto variates by inversion: K (1 − U)^{−1/s}."""
        return self.k_const * (1.0 - rng.random(size)) ** (-1.0 / self.shape)

    def sample_mixed_poisson(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """MP(F) variates: Poisson counts with F-distributed rates."""
        return rng.poisson(self.sample(rng, size))


def default_omega(n_vertices: int) -> float:
    """Slack ω(N) = ln ln N, clamped at 1."""
    if n_vertices < 3:
        return 1.0
    return max(1.0, math.log(math.log(n_vertices)))


@dataclass(frozen=True)
class EffectiveCutoff:
    """x₀ = ζR/(2α) + ω: w.h.p. no vertex has a type above it."""

    x0: float
    omega: float

    @classmethod
    def from_params(cls, params: ModelParams, omega: float | None = None) -> EffectiveCutoff:
        omega = default_omega(params.n_vertices) if omega is None else float(omega)
        if not (math.isfinite(omega) and omega >= 0.0):
            raise DomainError(f"[theory] omega must be a non-negative real, got {omega!r}")
        x0 = params.zeta * params.radius / (2.0 * params.alpha) + omega
        if x0 > params.radius:
            raise DomainError(
                f"[theory] cutoff x0={x0:.6g} exceeds R={params.radius:.6g} "
                f"(N={params.n_vertices} too small for omega={omega:g})"
            )
        return cls(x0, omega)
