"""Reference generator: every unordered pair decided on its own counter-keyed uniform."""

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..config import NAIVE_BLOCK_PAIRS, GeneratorKind, worker_count
from ..model.geometry import hyperbolic_distance
from ..model.params import ModelParams, PositionTable
from ..model.probability import edge_present
from ..sampler.seeding import SampleSeed, pair_uniforms
from .graph import Graph, Provenance

PairRule = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _row_blocks(n: int, block_pairs: int) -> list[tuple[int, int]]:
    """Split rows 0..n−1 so each block holds about `block_pairs` pairs (i < j)."""
    pairs_in_row = np.arange(n - 1, -1, -1, dtype=np.int64)
    cum = np.cumsum(pairs_in_row)
    cuts = np.searchsorted(cum, np.arange(block_pairs, cum[-1] if n else 0, block_pairs))
    bounds = np.unique(np.concatenate([[0], cuts + 1, [n]]))
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]


def _block_pairs(n: int, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """All (i, j) with lo ≤ i < hi and i < j < n, row-major."""
    rows = np.arange(lo, hi, dtype=np.int64)
    counts = n - 1 - rows
    i = np.repeat(rows, counts)
    row_start = np.repeat(np.cumsum(counts) - counts, counts)
    j = np.arange(i.shape[0], dtype=np.int64) - row_start + i + 1
    return i, j


def pairwise_edges(n: int, rule: PairRule, workers: int | None = None):
    """Apply `rule(i, j) -> keep mask` to every pair, block by block.

    Blocks are independent, so the result does not depend on the worker count.
    """
    blocks = _row_blocks(n, NAIVE_BLOCK_PAIRS)

    def run(block: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        i, j = _block_pairs(n, *block)
        keep = rule(i, j)
        return i[keep], j[keep]

    workers = min(workers or worker_count(), max(len(blocks), 1))
    if workers <= 1:
        parts = [run(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="naive") as pool:
            parts = list(pool.map(run, blocks))
    if not parts:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def hyperbolic_rule(
    positions: PositionTable, params: ModelParams, seed: SampleSeed
) -> PairRule:
    """Edge iff u_ij < p(d_ij), or d_ij < R in the disc model."""
    r, theta, zeta = positions.r, positions.theta, params.zeta

    def rule(i: np.ndarray, j: np.ndarray) -> np.ndarray:
        d = hyperbolic_distance(r[i], theta[i], r[j], theta[j], zeta)
        uniforms = None if params.disc else pair_uniforms(seed.seed, i, j, stream=seed.stream_id)
        return edge_present(d, uniforms, params)

    return rule


def generate_naive(
    positions: PositionTable,
    params: ModelParams,
    seed: SampleSeed,
    workers: int | None = None,
) -> Graph:
    """O(N²) reference: the draw for {i, j} depends only on (seed, stream, min, max)."""
    u, v = pairwise_edges(len(positions), hyperbolic_rule(positions, params, seed), workers)
    kind = GeneratorKind.DISC if params.disc else GeneratorKind.NAIVE
    provenance = Provenance(seed=seed.seed, kind=kind, stream=seed.stream_id)
    return Graph.from_pairs(params, positions, u, v, provenance)
