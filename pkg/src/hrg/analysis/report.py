"""Degree histograms, the discrete power-law tail fit and the distance to MP(F)."""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import polars as pl
from scipy.optimize import minimize_scalar
from scipy.special import zeta as hurwitz_zeta

from ..config import DEFAULT_K_CAP, DEFAULT_K_MIN, MIN_TAIL_SIZE, Regime
from ..errors import DomainError, InsufficientDataError
from ..generator.graph import Graph
from ..model.params import ModelParams
from ..theory.quadrature import mixed_poisson_pmf, mixed_poisson_tail

histogram_schema = {"k": pl.Int64, "n_k": pl.Int64}

# Search range for the tail exponent
_EXPONENT_BOUNDS = (1.0001, 12.0)
# Step for the numerical curvature of the log-likelihood
_CURVATURE_STEP = 1e-4
# Enough for every k <= k_cap across a scaling grid of parameter sets
MP_PMF_CACHE_SIZE = 1024


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    stderr: float
    k_min: int
    n_tail: int


def fit_power_law(degrees: np.ndarray, k_min: int = DEFAULT_K_MIN) -> PowerLawFit:
    """Discrete MLE of γ in P(D = k) ∝ k^{−γ}, k ≥ k_min.

    Minimises γ Σ ln k + n ln ζ(γ, k_min) with ζ the Hurwitz zeta function;
    the standard error is the inverse root curvature at the optimum.
    """
    if k_min < 1:
        raise DomainError(f"[analysis] k_min must be at least 1, got {k_min}")
    tail = np.asarray(degrees)
    tail = tail[tail >= k_min].astype(np.float64)
    if tail.size < MIN_TAIL_SIZE:
        raise InsufficientDataError(
            f"[analysis] insufficient tail: {tail.size} vertices with degree >= {k_min}, "
            f"need {MIN_TAIL_SIZE}"
        )
    log_sum = float(np.log(tail).sum())
    n = tail.size

    def neg_log_likelihood(gamma: float) -> float:
        return gamma * log_sum + n * math.log(hurwitz_zeta(gamma, k_min))

    result = minimize_scalar(neg_log_likelihood, bounds=_EXPONENT_BOUNDS, method="bounded")
    gamma = float(result.x)
    h = _CURVATURE_STEP
    curvature = (
        neg_log_likelihood(gamma + h) - 2.0 * neg_log_likelihood(gamma) + neg_log_likelihood(gamma - h)
    ) / h**2
    stderr = 1.0 / math.sqrt(curvature) if curvature > 0 else math.inf
    return PowerLawFit(exponent=gamma, stderr=stderr, k_min=k_min, n_tail=n)


@lru_cache(maxsize=MP_PMF_CACHE_SIZE)
def mp_pmf_cached(k: int, params: ModelParams) -> float:
    return mixed_poisson_pmf(k, params)


def degree_histogram(degrees: np.ndarray) -> pl.DataFrame:
    """(k, n_k) for every degree present, ascending in k."""
    return (
        pl.DataFrame({"k": np.asarray(degrees, dtype=np.int64)})
        .group_by("k")
        .agg(pl.len().cast(pl.Int64).alias("n_k"))
        .sort("k")
    )


def _has_mp_limit(params: ModelParams) -> bool:
    return params.theory_valid and params.regime is Regime.COLD


def tv_to_mixed_poisson(histogram: pl.DataFrame, n: int, params: ModelParams, k_cap: int) -> float:
    """½ Σ_{k≤k_cap} |N_k/N − P(MP = k)| + ½ |P̂(D > k_cap) − P(MP > k_cap)|."""
    counts = dict(zip(histogram["k"].to_list(), histogram["n_k"].to_list()))
    head = sum(abs(counts.get(k, 0) / n - mp_pmf_cached(k, params)) for k in range(k_cap + 1))
    emp_tail = sum(c for k, c in counts.items() if k > k_cap) / n
    return 0.5 * head + 0.5 * abs(emp_tail - mixed_poisson_tail(k_cap, params))


@dataclass(frozen=True)
class DegreeReport:
    """Degree statistics of one graph; fits that could not be made are None."""

    histogram: dict[int, int]
    mean_degree: float
    n: int
    k_min: int
    k_cap: int
    tail_exponent_hat: float | None
    tail_exponent_stderr: float | None
    tail_size: int
    tv_distance_to_mp: float | None

    def histogram_frame(self, params: ModelParams) -> pl.DataFrame:
        """k, n_k, n_k/N and (cold regime) the MP(F) pmf, as written to CSV."""
        frame = pl.DataFrame(
            {"k": list(self.histogram), "n_k": list(self.histogram.values())},
            schema=histogram_schema,
        ).with_columns((pl.col("n_k") / self.n).alias("frac"))
        if _has_mp_limit(params):
            pmf = [mp_pmf_cached(k, params) for k in frame["k"].to_list()]
        else:
            pmf = [None] * frame.height
        return frame.with_columns(pl.Series("mp_pmf", pmf, dtype=pl.Float64))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mean_degree": self.mean_degree,
            "k_min": self.k_min,
            "k_cap": self.k_cap,
            "tail_exponent_hat": self.tail_exponent_hat,
            "tail_exponent_stderr": self.tail_exponent_stderr,
            "tail_size": self.tail_size,
            "tv_distance_to_mp": self.tv_distance_to_mp,
            "histogram": {str(k): v for k, v in self.histogram.items()},
        }


def degree_report(g: Graph, k_min: int = DEFAULT_K_MIN, k_cap: int = DEFAULT_K_CAP) -> DegreeReport:
    """Histogram, mean, tail exponent and (cold regime) TV distance to MP(F)."""
    if k_cap < 0:
        raise DomainError(f"[analysis] k_cap must be non-negative, got {k_cap}")
    degrees = g.degrees
    histogram = degree_histogram(degrees)
    n = g.n
    tail_size = int((degrees >= k_min).sum())
    try:
        fit = fit_power_law(degrees, k_min)
        exponent, stderr = fit.exponent, fit.stderr
    except InsufficientDataError as e:
        print(f"{e}; tail exponent not reported", file=sys.stderr, flush=True)
        exponent = stderr = None
    tv = tv_to_mixed_poisson(histogram, n, g.params, k_cap) if _has_mp_limit(g.params) else None
    return DegreeReport(
        histogram=dict(zip(histogram["k"].to_list(), histogram["n_k"].to_list())),
        mean_degree=2.0 * g.n_edges / n,
        n=n,
        k_min=k_min,
        k_cap=k_cap,
        tail_exponent_hat=exponent,
        tail_exponent_stderr=stderr,
        tail_size=tail_size,
        tv_distance_to_mp=tv,
    )


def histogram_tv(g: Graph, h: Graph) -> float:
    """Total-variation distance between the empirical degree laws of two graphs."""
    joined = (
        degree_histogram(g.degrees)
        .with_columns(pl.col("n_k") / g.n)
        .join(
            degree_histogram(h.degrees).with_columns(pl.col("n_k") / h.n),
            on="k",
            how="full",
            coalesce=True,
            suffix="_h",
        )
        .with_columns(pl.col("n_k", "n_k_h").fill_null(0.0))
    )
    return 0.5 * float((joined["n_k"] - joined["n_k_h"]).abs().sum())
