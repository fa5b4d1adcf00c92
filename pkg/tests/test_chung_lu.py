import math

import numpy as np
import pytest

from hrg.config import GeneratorKind
from hrg.errors import DomainError
from hrg.generator import generate_chung_lu, generate_naive
from hrg.model import ModelParams
from hrg.sampler import SampleSeed, sample_positions
from hrg.theory import chung_lu_kernel


def test_edge_count_matches_kernel(cold, cold_positions, seed):
    g = generate_chung_lu(cold_positions, cold, seed, workers=1)
    t = cold_positions.t
    i, j = np.triu_indices(cold.n_vertices, k=1)
    p = np.minimum(1.0, chung_lu_kernel(t[i], t[j], cold) / cold.n_vertices)
    mean, var = p.sum(), (p * (1 - p)).sum()
    assert abs(g.n_edges - mean) <= 5 * math.sqrt(var)
    assert g.provenance.kind is GeneratorKind.CHUNG_LU


def test_independent_of_the_hyperbolic_draws(cold, cold_positions, seed):
    cl = generate_chung_lu(cold_positions, cold, seed, workers=1)
    hrg = generate_naive(cold_positions, cold, seed, workers=1)
    assert not np.array_equal(cl.edges, hrg.edges)
    assert generate_chung_lu(cold_positions, cold, seed, workers=3) == cl


def test_cold_regime_only():
    params = ModelParams(100, 1.0, 1.0, 0.5)
    positions = sample_positions(params, SampleSeed(0), workers=1)
    with pytest.raises(DomainError):
        generate_chung_lu(positions, params, SampleSeed(0), workers=1)
