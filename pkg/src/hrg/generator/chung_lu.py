"""Chung-Lu-type comparison graph sharing the hyperbolic model's weight kernel."""

from __future__ import annotations

import numpy as np

from ..config import GeneratorKind
from ..model.params import ModelParams, PositionTable
from ..sampler.seeding import CHUNG_LU_DOMAIN, SampleSeed, pair_uniforms
from ..theory.degrees import chung_lu_kernel
from .graph import Graph, Provenance
from .naive import pairwise_edges


def generate_chung_lu(
    positions: PositionTable,
    params: ModelParams,
    seed: SampleSeed,
    workers: int | None = None,
) -> Graph:
    """Independent edges with p_ij = min(1, κ(t_i, t_j)/N), using only the types of `positions`.

    Draws come from their own counter domain, so the same seed gives a graph
    independent of the hyperbolic one built on the same positions.
    """
    t = positions.t
    n = params.n_vertices
    # Raises outside the cold regime before any work is done
    chung_lu_kernel(0.0, 0.0, params)

    def rule(i: np.ndarray, j: np.ndarray) -> np.ndarray:
        p = np.minimum(1.0, chung_lu_kernel(t[i], t[j], params) / n)
        uniforms = pair_uniforms(seed.seed, i, j, domain=CHUNG_LU_DOMAIN, stream=seed.stream_id)
        return uniforms < p

    u, v = pairwise_edges(n, rule, workers)
    provenance = Provenance(seed=seed.seed, kind=GeneratorKind.CHUNG_LU, stream=seed.stream_id)
    return Graph.from_pairs(params, positions, u, v, provenance)
