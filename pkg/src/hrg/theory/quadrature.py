"""Quadrature oracles: C_β from its defining integrals, the exact angle-averaged
connection probability, and the mixed-Poisson pmf and tail.

All integrals go through `scipy.integrate.quad` with relative tolerances and
`full_output`, so a QUADPACK failure surfaces as `ConvergenceError` instead of
a warning.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad
from scipy.special import expit, gammainc, gammaincc, gammaln

from ..config import MP_REMAINDER_TOL, QUAD_LIMIT, QUAD_REL_TOL
from ..errors import ConvergenceError, DomainError
from ..model.geometry import asinh_exp, log_sinh
from ..model.params import ModelParams
from .constants import require_cold

# Absolute floor for the pmf integrals
MP_ABS_TOL = 1e-13
# Tolerated error estimate when QUADPACK flags roundoff, relative to the value
_ROUNDOFF_SLACK = 100.0
# Half-width of the Poisson window around λ = k + 1, in standard deviations
MP_WINDOW_SIGMAS = 10.0


def integrate(f, a: float, b: float, *, epsabs: float = 0.0, epsrel: float = QUAD_REL_TOL, **kwargs) -> float:
    """`quad` that raises instead of warning when the error target is missed.

    QUADPACK also flags roundoff when the target is already met to machine
    precision; those results are kept if the error estimate is still small.
    """
    if b <= a:
        return 0.0
    out = quad(f, a, b, full_output=1, epsabs=epsabs, epsrel=epsrel, limit=QUAD_LIMIT, **kwargs)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > max(epsabs, _ROUNDOFF_SLACK * epsrel * abs(value)):
        raise ConvergenceError(
            f"[theory] quadrature over [{a:.6g}, {b:.6g}] failed: {out[3]} "
            f"(value={value:.6g}, error={abserr:.3g})"
        )
    return value


def c_beta_numeric(beta: float) -> float:
    """C_β by quadrature of its defining integral.

    β > 1: (2/π)∫₀^∞ dz/(1 + z^β), folded onto [0, 1] by z → 1/z, which leaves
    an algebraic endpoint factor w^{β−2}. β < 1: (1/π)∫₀^π sin^{−β}(θ/2) dθ with
    the θ^{−β} singularity taken as a quadrature weight.
    """
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"[theory] c_beta_numeric needs a positive finite beta, got {beta!r}")
    if beta == 1.0:
        raise DomainError("[theory] the defining integral diverges at beta = 1")
    if beta > 1.0:
        near = integrate(lambda z: 1.0 / (1.0 + z**beta), 0.0, 1.0)
        far = integrate(lambda w: 1.0 / (1.0 + w**beta), 0.0, 1.0, weight="alg", wvar=(beta - 2.0, 0.0))
        return 2.0 / math.pi * (near + far)
    # θ/sin(θ/2) = 2/sinc(θ/2π)
    total = integrate(
        lambda th: (2.0 / np.sinc(th / (2.0 * math.pi))) ** beta,
        0.0,
        math.pi,
        weight="alg",
        wvar=(-beta, 0.0),
    )
    return total / math.pi


def _check_type(name: str, t: float, params: ModelParams) -> None:
    if not 0.0 <= t <= params.radius:
        raise DomainError(f"[theory] {name}={t!r} outside [0, R={params.radius:.6g}]")


def angle_avg_probability_numeric(t_u: float, t_v: float, params: ModelParams) -> float:
    """p̂ = (1/π)∫₀^π p(d(θ)) dθ for vertices of types t_u, t_v.

    Near θ = 0 the integrand is flat and integrated directly; beyond that the
    variable is ln θ, with breakpoints at the two scales where it bends: the
    crossing angle 2/A and θ̂.
    """
    _check_type("t_u", t_u, params)
    _check_type("t_v", t_v, params)
    zeta, radius = params.zeta, params.radius
    r_u, r_v = radius - t_u, radius - t_v
    radial = float(2.0 * log_sinh(0.5 * zeta * abs(r_u - r_v)))
    with np.errstate(divide="ignore"):
        scale = float(log_sinh(zeta * r_u) + log_sinh(zeta * r_v))

    if params.disc:
        return _disc_angle_average(radial, scale, params)

    slope = 0.5 * params.beta * zeta

    def p_at(theta: float) -> float:
        angular = scale + 2.0 * math.log(math.sin(0.5 * theta)) if theta > 0.0 else -math.inf
        d = (2.0 / zeta) * float(asinh_exp(0.5 * np.logaddexp(radial, angular)))
        return float(expit(-slope * (d - radius)))

    crossing = 2.0 * math.exp(0.5 * zeta * (t_u + t_v - radius))
    hat = math.sqrt(math.exp(-2.0 * zeta * r_u) + math.exp(-2.0 * zeta * r_v))
    theta_min = 1e-3 * min(crossing, hat, math.pi)
    log_lo, log_hi = math.log(theta_min), math.log(math.pi)
    points = sorted(p for p in (math.log(crossing), math.log(hat)) if log_lo < p < log_hi)

    head = integrate(p_at, 0.0, theta_min)
    body = integrate(
        lambda s: p_at(math.exp(s)) * math.exp(s), log_lo, log_hi, points=points or None
    )
    return (head + body) / math.pi


def _disc_angle_average(radial: float, scale: float, params: ModelParams) -> float:
    """Disc model: the fraction of angles with d < R, in closed form."""
    log_r2 = float(2.0 * log_sinh(0.5 * params.zeta * params.radius))
    if radial >= log_r2:
        return 0.0
    # sin²(θ_c/2) = (sinh²(ζR/2) − sinh²(ζ|Δr|/2)) / (sinh ζr_u sinh ζr_v)
    log_gap = log_r2 + math.log(-math.expm1(radial - log_r2))
    s2 = math.exp(min(log_gap - scale, 0.0))
    return 2.0 * math.asin(math.sqrt(s2)) / math.pi


def _mp_log_integrand(k: int, shape: float, k_const: float):
    log_front = math.log(shape) + shape * math.log(k_const) - float(gammaln(k + 1))
    power = k - shape - 1.0
    return lambda t: math.exp(log_front - t + power * math.log(t))


def mixed_poisson_pmf(k: int, params: ModelParams) -> float:
    """P(MP(F) = k) = s K^s ∫_K^∞ e^{−t} t^k/k! t^{−s−1} dt, s = 2α/ζ.

    The range is cut at T = K + 60 + 10k; the discarded part is bounded by
    s K^s T^{−s−1} Q(k+1, T) and has to stay below `MP_REMAINDER_TOL`.
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise DomainError(f"[theory] k must be a non-negative integer, got {k!r}")
    k = int(k)
    k_const = require_cold(params, "mixed_poisson_pmf").k_const
    shape = 2.0 * params.alpha / params.zeta
    upper = k_const + 60.0 + 10.0 * k
    remainder = (
        shape * k_const**shape * upper ** (-shape - 1.0) * float(gammaincc(k + 1, upper))
    )
    if remainder >= MP_REMAINDER_TOL:
        raise ConvergenceError(f"[theory] pmf({k}) truncation remainder {remainder:.3g} too large")
    points = [float(k)] if k_const < k < upper else None
    return integrate(
        _mp_log_integrand(k, shape, k_const),
        k_const,
        upper,
        epsabs=MP_ABS_TOL,
        points=points,
    )


def mixed_poisson_tail(k: int, params: ModelParams) -> float:
    """P(MP(F) > k) = ∫_K^∞ P(k+1, λ) s K^s λ^{−s−1} dλ, with P the regularised lower gamma.

    P(k+1, λ) steps from 0 to 1 within a few √(k+1) of λ = k + 1, so that
    window gets its own panel.
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise DomainError(f"[theory] k must be a non-negative integer, got {k!r}")
    k_const = require_cold(params, "mixed_poisson_tail").k_const
    shape = 2.0 * params.alpha / params.zeta

    def integrand(lam: float) -> float:
        return float(gammainc(k + 1, lam)) * shape / k_const * (k_const / lam) ** (shape + 1.0)

    half = MP_WINDOW_SIGMAS * math.sqrt(k + 1)
    edges = sorted({k_const, max(k_const, k + 1 - half), max(k_const, k + 1 + half)})
    total = sum(
        integrate(integrand, a, b, epsabs=MP_ABS_TOL) for a, b in zip(edges, edges[1:])
    )
    return total + integrate(integrand, edges[-1], math.inf, epsabs=MP_ABS_TOL)
