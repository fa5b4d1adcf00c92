"""Radial law ρ(r) = α sinh(αr)/(cosh(αR) − 1) and position sampling.

The CDF (cosh(αr) − 1)/(cosh(αR) − 1) equals sinh²(αr/2)/sinh²(αR/2), which
inverts in closed form as r = (2/α) asinh(√u sinh(αR/2)). Both directions are
evaluated through `log_sinh`/`asinh_exp`, so small u keeps full relative
precision and large αR does not overflow.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..config import worker_count
from ..errors import DomainError
from ..model.geometry import TWO_PI, asinh_exp, log_sinh
from ..model.params import ModelParams, PositionTable
from .seeding import POSITION_DOMAIN, SampleSeed, counter_uniforms, derive_key

# Vertices per sampling task
_BLOCK = 65_536


def radial_cdf(r: np.ndarray | float, params: ModelParams):
    """P(r_v ≤ r)."""
    r = np.asarray(r, dtype=np.float64)
    radius = params.radius
    if np.any((r < 0.0) | (r > radius)) or np.any(np.isnan(r)):
        raise DomainError(f"[sample] radial_cdf needs 0 ≤ r ≤ R={radius!r}")
    alpha = params.alpha
    with np.errstate(invalid="ignore"):
        ratio = np.exp(2.0 * (log_sinh(0.5 * alpha * r) - log_sinh(0.5 * alpha * radius)))
    cdf = np.where(r >= radius, 1.0, ratio)
    return float(cdf) if cdf.ndim == 0 else cdf


def type_cdf(x: np.ndarray | float, params: ModelParams):
    """Exact P(t_v ≤ x) for 0 ≤ x ≤ R; tends to 1 − e^{−αx}."""
    x = np.asarray(x, dtype=np.float64)
    cdf = 1.0 - np.asarray(radial_cdf(params.radius - x, params))
    return float(cdf) if cdf.ndim == 0 else cdf


def sample_radius(uniform: np.ndarray | float, params: ModelParams):
    """Inverse of `radial_cdf`; `uniform` in [0, 1)."""
    u = np.asarray(uniform, dtype=np.float64)
    alpha, radius = params.alpha, params.radius
    with np.errstate(divide="ignore"):
        h = 0.5 * np.log(u) + log_sinh(0.5 * alpha * radius)
    r = np.minimum((2.0 / alpha) * asinh_exp(h), radius)
    return float(r) if r.ndim == 0 else r


def _sample_block(
    params: ModelParams, key: np.uint64, start: int, stop: int
) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(start, stop, dtype=np.uint64)
    u_r = counter_uniforms(key, 2 * idx)
    u_theta = counter_uniforms(key, 2 * idx + 1)
    # 2π(1 − u) lands in the half-open (0, 2π]
    return sample_radius(u_r, params), TWO_PI * (1.0 - u_theta)


def sample_positions(
    params: ModelParams, seed: SampleSeed, workers: int | None = None
) -> PositionTable:
    """N i.i.d. positions; vertex i draws from counters (2i, 2i+1) under the seed's key.

    The table is identical bit for bit for any `workers`, and any index range
    can be regenerated on its own.
    """
    n = params.n_vertices
    key = derive_key(seed.seed, seed.stream_id, POSITION_DOMAIN)
    bounds = [(lo, min(lo + _BLOCK, n)) for lo in range(0, n, _BLOCK)]
    workers = min(workers or worker_count(), len(bounds))
    if workers <= 1:
        blocks = [_sample_block(params, key, lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="sample") as pool:
            blocks = list(pool.map(lambda b: _sample_block(params, key, *b), bounds))
    r = np.concatenate([b[0] for b in blocks])
    theta = np.concatenate([b[1] for b in blocks])
    return PositionTable(r, theta, params.radius)


def area_fraction(r: np.ndarray | float, params: ModelParams):
    """Hyperbolic area of the radius-r disc over that of the radius-R disc.

    Equals `radial_cdf` exactly when α = ζ (uniform points).
    """
    r = np.asarray(r, dtype=np.float64)
    zeta, radius = params.zeta, params.radius
    with np.errstate(invalid="ignore"):
        frac = np.exp(2.0 * (log_sinh(0.5 * zeta * r) - log_sinh(0.5 * zeta * radius)))
    frac = np.where(r >= radius, 1.0, frac)
    return float(frac) if frac.ndim == 0 else frac


def expected_type_excess(params: ModelParams) -> float:
    """Order of the deviation of the type law from 1 − e^{−αx}: N^{−2α/ζ}."""
    return math.exp(-2.0 * params.alpha / params.zeta * math.log(params.n_vertices))
