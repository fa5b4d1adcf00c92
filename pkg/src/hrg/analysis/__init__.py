from .clustering import clustering_coefficient
from .experiments import (
    ConditionalDegree,
    IndependenceSummary,
    ScalingResult,
    conditional_degree_check,
    degree_correlation,
    independence_check,
    replicate_graph,
    scaling_experiment,
)
from .goodness import angle_chi_square, cutoff_check, radial_ks_test, type_law_check
from .report import DegreeReport, degree_report, fit_power_law, histogram_tv

__all__ = [
    "ConditionalDegree",
    "DegreeReport",
    "IndependenceSummary",
    "ScalingResult",
    "angle_chi_square",
    "clustering_coefficient",
    "conditional_degree_check",
    "cutoff_check",
    "degree_correlation",
    "degree_report",
    "fit_power_law",
    "histogram_tv",
    "independence_check",
    "radial_ks_test",
    "replicate_graph",
    "scaling_experiment",
    "type_law_check",
]
