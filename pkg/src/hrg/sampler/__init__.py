from .radial import (
    area_fraction,
    expected_type_excess,
    radial_cdf,
    sample_positions,
    sample_radius,
    type_cdf,
)
from .seeding import SampleSeed, pair_uniforms

__all__ = [
    "SampleSeed",
    "area_fraction",
    "expected_type_excess",
    "pair_uniforms",
    "radial_cdf",
    "sample_positions",
    "sample_radius",
    "type_cdf",
]
