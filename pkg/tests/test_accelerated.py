import math
import time

import numpy as np
import pytest
from scipy.stats import norm

from hrg.config import GeneratorKind
from hrg.generator import generate_accelerated, generate_naive
from hrg.generator.accelerated import band_layout, envelope, geometric_hits, shell_edges
from hrg.model import ModelParams, connection_probability, hyperbolic_distance
from hrg.sampler import SampleSeed, sample_positions
from hrg.theory import regime_constants


def test_geometric_hits_extremes():
    rng = np.random.default_rng(0)
    np.testing.assert_array_equal(geometric_hits(rng, 10, 1.0), np.arange(10))
    assert geometric_hits(rng, 10, 0.0).size == 0
    assert geometric_hits(rng, 0, 0.5).size == 0
    assert geometric_hits(rng, 1, 1.0).tolist() == [0]


def test_geometric_hits_rate():
    rng = np.random.default_rng(1)
    hits = geometric_hits(rng, 1_000_000, 0.01)
    assert (np.diff(hits) > 0).all()
    assert hits[0] >= 0 and hits[-1] < 1_000_000
    assert abs(hits.size - 10_000) < 500


def test_shell_edges_double_out_to_pi():
    params = ModelParams(10_000, 1.0, 1.0, 2.0)
    phi = shell_edges(15.0, 16.0, params)
    assert phi[0] == 0.0 and phi[-1] == math.pi
    assert (np.diff(phi) > 0).all()
    inner = phi[1:-1]
    np.testing.assert_allclose(inner[1:] / inner[:-1], 2.0)
    np.testing.assert_array_equal(shell_edges(0.0, 0.0, params), [0.0, math.pi])


def test_envelope_bounds_every_pair_in_its_cell():
    params = ModelParams(5000, 1.0, 1.0, 2.0)
    rng = np.random.default_rng(2)
    lo_u, hi_u, lo_v, hi_v = 14.0, 14.69, 15.0, 15.69
    phi = shell_edges(lo_u, lo_v, params)
    p_bar = envelope(lo_u, hi_u, lo_v, hi_v, phi[:-1], params)
    for k in range(phi.size - 1):
        r_u = rng.uniform(lo_u, hi_u, 2000)
        r_v = rng.uniform(lo_v, hi_v, 2000)
        angle = rng.uniform(phi[k], phi[k + 1], 2000)
        p = connection_probability(hyperbolic_distance(r_u, 0.0, r_v, angle, 1.0), params)
        assert (p <= p_bar[k]).all()


def test_bands_partition_vertices(cold, cold_positions):
    bands = band_layout(cold_positions, cold)
    members = np.concatenate([b.members for b in bands])
    assert np.array_equal(np.sort(members), np.arange(cold.n_vertices))
    for b in bands:
        assert (np.diff(b.theta) >= 0).all()
        assert b.r_hi - b.r_lo <= math.log(2.0) / cold.zeta + 1e-12


def test_disc_matches_naive_exactly():
    params = ModelParams(3000, 1.0, 0.8, 2.0, disc=True)
    positions = sample_positions(params, SampleSeed(3), workers=1)
    fast = generate_accelerated(positions, params, SampleSeed(3), workers=2)
    slow = generate_naive(positions, params, SampleSeed(3), workers=2)
    np.testing.assert_array_equal(fast.edges, slow.edges)
    assert fast.provenance.kind is GeneratorKind.DISC


def test_deterministic_and_worker_independent(cold, cold_positions, seed):
    a = generate_accelerated(cold_positions, cold, seed, workers=1)
    b = generate_accelerated(cold_positions, cold, seed, workers=4)
    assert a == b
    assert a.provenance.kind is GeneratorKind.ACCELERATED
    c = generate_accelerated(cold_positions, cold, SampleSeed(seed.seed, 1), workers=1)
    assert not np.array_equal(a.edges, c.edges)


def test_same_degree_profile_as_naive():
    params = ModelParams(4000, 1.0, 1.0, 2.0)
    positions = sample_positions(params, SampleSeed(6), workers=1)
    fast = generate_accelerated(positions, params, SampleSeed(6), workers=1)
    slow = generate_naive(positions, params, SampleSeed(6), workers=1)
    assert fast.n_edges == pytest.approx(slow.n_edges, rel=0.05)
    assert np.corrcoef(fast.degrees, slow.degrees)[0, 1] > 0.7


def test_falls_back_to_naive_for_tiny_beta(capsys):
    params = ModelParams(200, 1.0, 1.0, 5e-4)
    positions = sample_positions(params, SampleSeed(0), workers=1)
    g = generate_accelerated(positions, params, SampleSeed(0), workers=1)
    assert "falling back to naive" in capsys.readouterr().err
    assert g == generate_naive(positions, params, SampleSeed(0), workers=1)


FIXTURE_N = 50
STREAMS = 100_000


def pair_frequencies(generate, positions, params) -> np.ndarray:
    counts = np.zeros((FIXTURE_N, FIXTURE_N), dtype=np.int64)
    for s in range(STREAMS):
        g = generate(positions, params, SampleSeed(1, s), workers=1)
        counts[g.edges[:, 0], g.edges[:, 1]] += 1
    i, j = np.triu_indices(FIXTURE_N, k=1)
    return counts[i, j] / STREAMS


@pytest.mark.slow
@pytest.mark.parametrize("beta", [2.0, 0.5])
def test_both_generators_follow_p_and_agree(beta):
    params = ModelParams(FIXTURE_N, 1.0, 1.0, beta)
    positions = sample_positions(params, SampleSeed(1), workers=1)
    r, th = positions.r, positions.theta
    i, j = np.triu_indices(FIXTURE_N, k=1)
    p = connection_probability(hyperbolic_distance(r[i], th[i], r[j], th[j], 1.0), params)
    fast = pair_frequencies(generate_accelerated, positions, params)
    slow = pair_frequencies(generate_naive, positions, params)

    # 99.9% binomial bands around p, Bonferroni over the pairs
    z = norm.isf(0.001 / (2 * i.size))
    band = z * np.sqrt(p * (1 - p) / STREAMS) + 1.0 / STREAMS
    assert (np.abs(fast - p) <= band).all()
    assert (np.abs(slow - p) <= band).all()

    # Two-sample proportion test at 1%, Bonferroni over the pairs
    pooled = 0.5 * (fast + slow)
    spread = np.sqrt(2.0 * pooled * (1 - pooled) / STREAMS)
    z = norm.isf(0.01 / (2 * i.size))
    assert (np.abs(fast - slow) <= z * spread + 1.0 / STREAMS).all()


def test_large_cold_graph_edge_count_and_wall_time():
    params = ModelParams(100_000, 1.0, 1.0, 2.0)
    started = time.perf_counter()
    positions = sample_positions(params, SampleSeed(10))
    g = generate_accelerated(positions, params, SampleSeed(10))
    assert time.perf_counter() - started < 10.0
    k = regime_constants(params).k_const
    expected = k * 2.0 * params.alpha / (2.0 * params.alpha - params.zeta) * params.n_vertices / 2
    assert g.n_edges == pytest.approx(expected, rel=0.1)
