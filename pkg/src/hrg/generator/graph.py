"""Immutable graph: position table, canonical edge array and provenance."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import polars as pl

from ..config import GeneratorKind
from ..model.params import ModelParams, PositionTable

edge_schema = {"u": pl.Int64, "v": pl.Int64}


@dataclass(frozen=True)
class Provenance:
    seed: int
    kind: GeneratorKind
    stream: int = 0


@dataclass(frozen=True, eq=False)
class Graph:
    """Vertex positions plus edges stored as sorted unique (u, v) rows with u < v."""

    params: ModelParams
    positions: PositionTable
    edges: np.ndarray
    provenance: Provenance

    def __post_init__(self) -> None:
        edges = np.ascontiguousarray(self.edges, dtype=np.int64).reshape(-1, 2)
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        if __debug__:
            n = len(self.positions)
            assert n == self.params.n_vertices, f"{n=} positions for N={self.params.n_vertices}"
            if len(edges):
                u, v = edges[:, 0], edges[:, 1]
                assert (u >= 0).all() and (v < n).all(), "edge endpoint out of range"
                assert (u < v).all(), "edges must be canonical (u < v, no self-loops)"
                keys = u * n + v
                assert (np.diff(keys) > 0).all(), "edges must be sorted and unique"

    @classmethod
    def from_pairs(
        cls,
        params: ModelParams,
        positions: PositionTable,
        u: np.ndarray,
        v: np.ndarray,
        provenance: Provenance,
    ) -> Graph:
        """Canonicalise (min, max) and sort lexicographically."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        frame = pl.DataFrame(
            {"u": np.minimum(u, v), "v": np.maximum(u, v)}, schema=edge_schema
        ).sort("u", "v")
        return cls(params, positions, frame.to_numpy(), provenance)

    @property
    def n(self) -> int:
        return self.params.n_vertices

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self.edges.ravel(), minlength=self.n)
        deg.setflags(write=False)
        return deg

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR (indptr, indices) with each neighbour list sorted ascending."""
        both = np.concatenate([self.edges, self.edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        indices = both[order, 1]
        indptr = np.concatenate([[0], np.cumsum(self.degrees)])
        return indptr, indices

    def neighbors(self, u: int) -> np.ndarray:
        indptr, indices = self.adjacency
        return indices[indptr[u] : indptr[u + 1]]

    def edge_frame(self) -> pl.DataFrame:
        return pl.DataFrame(
            {"u": self.edges[:, 0], "v": self.edges[:, 1]}, schema=edge_schema
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.params == other.params
            and self.provenance == other.provenance
            and self.positions == other.positions
            and np.array_equal(self.edges, other.edges)
        )

    __hash__ = None  # type: ignore[assignment]


def degree_sequence(g: Graph) -> list[int]:
    """D_u for every vertex, indexed 0..N−1."""
    return g.degrees.tolist()
