"""Goodness-of-fit checks on sampled positions: radial KS, angular χ², type law, cutoff."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import chisquare, kstest, poisson

from ..model.geometry import TWO_PI
from ..model.params import ModelParams, PositionTable
from ..sampler.radial import expected_type_excess, radial_cdf, type_cdf
from ..theory.constants import EffectiveCutoff

ANGLE_BINS = 64
# Tail probability left above the Poisson bound on the count beyond x₀
CUTOFF_LEVEL = 1e-3


@dataclass(frozen=True)
class GofResult:
    statistic: float
    pvalue: float

    def passed(self, level: float = 0.01) -> bool:
        return self.pvalue >= level

    def to_dict(self) -> dict:
        return asdict(self)


def radial_ks_test(positions: PositionTable, params: ModelParams) -> GofResult:
    """One-sample KS test of the radii against `radial_cdf`."""
    res = kstest(positions.r, lambda r: radial_cdf(r, params))
    return GofResult(float(res.statistic), float(res.pvalue))


def angle_chi_square(positions: PositionTable, bins: int = ANGLE_BINS) -> GofResult:
    """χ² test of the angles against the uniform law on equal-width bins."""
    counts, _ = np.histogram(positions.theta, bins=bins, range=(0.0, TWO_PI))
    res = chisquare(counts)
    return GofResult(float(res.statistic), float(res.pvalue))


def _sup_distance(sorted_x: np.ndarray, cdf: np.ndarray) -> float:
    n = sorted_x.shape[0]
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


@dataclass(frozen=True)
class TypeLawResult:
    discrepancy_asymptotic: float
    discrepancy_exact: float
    band: float

    @property
    def passed(self) -> bool:
        return self.discrepancy_asymptotic <= self.band

    def to_dict(self) -> dict:
        return asdict(self) | {"passed": self.passed}


def type_law_check(positions: PositionTable, params: ModelParams) -> TypeLawResult:
    """Sup distance of the empirical type CDF to 1 − e^{−αx} and to the exact law.

    The band 3/√N + N^{−2α/ζ} covers sampling noise plus the gap between the
    exact law and its exponential limit.
    """
    t = np.sort(positions.t)
    t = np.clip(t, 0.0, params.radius)
    asymptotic = -np.expm1(-params.alpha * t)
    n = t.shape[0]
    return TypeLawResult(
        discrepancy_asymptotic=_sup_distance(t, asymptotic),
        discrepancy_exact=_sup_distance(t, np.asarray(type_cdf(t, params))),
        band=3.0 / math.sqrt(n) + expected_type_excess(params),
    )


@dataclass(frozen=True)
class CutoffResult:
    x0: float
    omega: float
    max_type: float
    n_above: int
    expected_above: float
    bound: int

    @property
    def passed(self) -> bool:
        return self.n_above <= self.bound

    def to_dict(self) -> dict:
        return asdict(self) | {"passed": self.passed}


def cutoff_check(
    positions: PositionTable, params: ModelParams, omega: float | None = None
) -> CutoffResult:
    """How many vertices sit beyond x₀, against a Poisson bound on that count.

    The expected count N P(t > x₀) is about 1/ln N at the default ω, so a
    vertex or two past x₀ is not by itself a failure.
    """
    cutoff = EffectiveCutoff.from_params(params, omega)
    t = positions.t
    expected = len(positions) * float(radial_cdf(params.radius - cutoff.x0, params))
    return CutoffResult(
        x0=cutoff.x0,
        omega=cutoff.omega,
        max_type=float(t.max()),
        n_above=int((t > cutoff.x0).sum()),
        expected_above=expected,
        bound=int(poisson.ppf(1.0 - CUTOFF_LEVEL, expected)) if expected > 0 else 0,
    )
