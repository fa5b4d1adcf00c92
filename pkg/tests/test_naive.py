import math

import numpy as np
import pytest
from conftest import table

from hrg.config import GeneratorKind
from hrg.generator import generate_naive, naive
from hrg.model import ModelParams, connection_probability, hyperbolic_distance
from hrg.sampler import SampleSeed, pair_uniforms, sample_positions


def edge_set(g) -> set[tuple[int, int]]:
    return set(map(tuple, g.edges.tolist()))


@pytest.mark.parametrize(("n", "block"), [(1, 10), (2, 1), (7, 3), (300, 1000)])
def test_blocks_cover_every_pair_once(n, block):
    pairs = [naive._block_pairs(n, lo, hi) for lo, hi in naive._row_blocks(n, block)]
    i = np.concatenate([p[0] for p in pairs])
    j = np.concatenate([p[1] for p in pairs])
    assert i.size == n * (n - 1) // 2
    assert (i < j).all()
    assert np.unique(i * n + j).size == i.size


def test_matches_pairwise_definition(cold, cold_positions, seed):
    g = generate_naive(cold_positions, cold, seed, workers=1)
    r, th = cold_positions.r, cold_positions.theta
    i, j = np.triu_indices(cold.n_vertices, k=1)
    d = hyperbolic_distance(r[i], th[i], r[j], th[j], cold.zeta)
    keep = pair_uniforms(seed.seed, i, j) < connection_probability(d, cold)
    np.testing.assert_array_equal(g.edges, np.column_stack([i[keep], j[keep]]))
    assert g.provenance.kind is GeneratorKind.NAIVE


def test_independent_of_workers_and_blocks(monkeypatch, cold, cold_positions, seed):
    reference = generate_naive(cold_positions, cold, seed, workers=1)
    monkeypatch.setattr(naive, "NAIVE_BLOCK_PAIRS", 5_000)
    assert generate_naive(cold_positions, cold, seed, workers=4) == reference


def test_streams_give_different_graphs(cold, cold_positions):
    a = generate_naive(cold_positions, cold, SampleSeed(7, 0), workers=1)
    b = generate_naive(cold_positions, cold, SampleSeed(7, 1), workers=1)
    assert a.n_edges > 0
    assert not np.array_equal(a.edges, b.edges)
    assert b.provenance.stream == 1


def test_two_vertices_at_threshold_distance():
    params = ModelParams(2, 1.0, 1.0, 2.0)
    positions = table([0.0, params.radius], [1.0, 2.0], params)
    d = hyperbolic_distance(0.0, 1.0, params.radius, 2.0, 1.0)
    assert d == pytest.approx(params.radius, rel=1e-14)
    p = connection_probability(d, params)
    seeds = 10_000
    hits = sum(
        generate_naive(positions, params, SampleSeed(s), workers=1).n_edges for s in range(seeds)
    )
    sigma = math.sqrt(seeds * p * (1 - p))
    assert abs(hits - seeds * p) <= 3 * sigma


def test_disc_edges_are_the_pairs_inside_radius():
    params = ModelParams(500, 1.0, 1.0, 2.0, disc=True)
    positions = sample_positions(params, SampleSeed(2), workers=1)
    g = generate_naive(positions, params, SampleSeed(2), workers=1)
    r, th = positions.r, positions.theta
    i, j = np.triu_indices(500, k=1)
    inside = hyperbolic_distance(r[i], th[i], r[j], th[j], 1.0) < params.radius
    assert edge_set(g) == set(zip(i[inside].tolist(), j[inside].tolist()))
    assert g.provenance.kind is GeneratorKind.DISC
    # The pair draws play no part
    assert generate_naive(positions, params, SampleSeed(99), workers=1).edges.tolist() == g.edges.tolist()


@pytest.mark.slow
def test_per_pair_frequencies_follow_p():
    params = ModelParams(50, 1.0, 1.0, 2.0)
    positions = sample_positions(params, SampleSeed(1), workers=1)
    r, th = positions.r, positions.theta
    i, j = np.triu_indices(50, k=1)
    p = connection_probability(hyperbolic_distance(r[i], th[i], r[j], th[j], 1.0), params)
    seeds = 100_000
    counts = np.zeros((50, 50), dtype=np.int64)
    for s in range(seeds):
        g = generate_naive(positions, params, SampleSeed(s), workers=1)
        counts[g.edges[:, 0], g.edges[:, 1]] += 1
    freq = counts[i, j] / seeds
    # 99.9% band, Bonferroni over the 1225 pairs
    z = 5.0
    band = z * np.sqrt(p * (1 - p) / seeds) + 1.0 / seeds
    assert (np.abs(freq - p) <= band).all()
