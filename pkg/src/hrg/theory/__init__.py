from .constants import (
    EffectiveCutoff,
    MixingDistribution,
    RegimeConstants,
    c_beta,
    default_omega,
    regime_constants,
)
from .degrees import (
    angle_avg_probability_asymptotic,
    chung_lu_kernel,
    claim_ratio,
    edge_probability_given_type,
    expected_degree,
)
from .quadrature import (
    angle_avg_probability_numeric,
    c_beta_numeric,
    mixed_poisson_pmf,
    mixed_poisson_tail,
)

__all__ = [
    "EffectiveCutoff",
    "MixingDistribution",
    "RegimeConstants",
    "angle_avg_probability_asymptotic",
    "angle_avg_probability_numeric",
    "c_beta",
    "c_beta_numeric",
    "chung_lu_kernel",
    "claim_ratio",
    "default_omega",
    "edge_probability_given_type",
    "expected_degree",
    "mixed_poisson_pmf",
    "mixed_poisson_tail",
    "regime_constants",
]
