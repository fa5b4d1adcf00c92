"""Global clustering (transitivity) over the sparse adjacency matrix."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_array

from ..generator.graph import Graph


def adjacency_matrix(g: Graph) -> csr_array:
    indptr, indices = g.adjacency
    data = np.ones(indices.shape[0], dtype=np.int64)
    return csr_array((data, indices, indptr), shape=(g.n, g.n))


def clustering_coefficient(g: Graph) -> float:
    """3 × triangles / connected triples; 0 when there is no path of length 2."""
    deg = g.degrees.astype(np.int64)
    triples2 = int((deg * (deg - 1)).sum())
    if triples2 == 0:
        return 0.0
    a = adjacency_matrix(g)
    # Σ (A ∘ A²) counts each triangle six times, Σ d(d−1) each triple twice
    closed = int((a * (a @ a)).sum())
    return closed / triples2
