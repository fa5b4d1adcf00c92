"""Replicate experiments: mean-degree scaling, conditional degrees and independence."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import polars as pl
from scipy.stats import linregress
from scipy.stats import t as student_t
from tqdm import tqdm

from ..config import GeneratorKind, Regime
from ..errors import DomainError, InsufficientDataError
from ..generator import GENERATORS, Graph
from ..model.params import ModelParams
from ..sampler.radial import sample_positions
from ..sampler.seeding import SampleSeed
from ..theory.constants import EffectiveCutoff
from ..theory.degrees import expected_degree

scaling_schema = {
    "n": pl.Int64,
    "ln_n": pl.Float64,
    "mean_degree": pl.Float64,
    "stderr": pl.Float64,
    "ci_low": pl.Float64,
    "ci_high": pl.Float64,
    "replicates": pl.Int64,
}

MIN_GRID_POINTS = 4
MAX_DESIGNATED = 5
CI_LEVEL = 0.95


def replicate_graph(
    params: ModelParams,
    seed: int,
    replicate: int,
    generator: GeneratorKind = GeneratorKind.ACCELERATED,
    workers: int | None = None,
) -> Graph:
    """Replicate r: fresh positions and pair draws from stream r of `seed`."""
    sample_seed = SampleSeed(seed, replicate)
    positions = sample_positions(params, sample_seed, workers=workers)
    return GENERATORS[generator](positions, params, sample_seed, workers=workers)


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float

    @classmethod
    def of(cls, x: np.ndarray, y: np.ndarray) -> LinearFit:
        fit = linregress(x, y)
        return cls(float(fit.slope), float(fit.intercept), float(fit.rvalue**2))

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "r_squared": self.r_squared}


@dataclass(frozen=True)
class ScalingResult:
    """Per-N mean degrees, with fits of mean vs ln N and ln mean vs ln N."""

    table: pl.DataFrame
    linear_fit: LinearFit
    loglog_fit: LinearFit | None

    def to_dict(self) -> dict:
        return {
            "rows": self.table.to_dicts(),
            "linear_fit": self.linear_fit.to_dict(),
            "loglog_fit": None if self.loglog_fit is None else self.loglog_fit.to_dict(),
        }


def _check_grid(n_grid: list[int]) -> list[int]:
    grid = [int(n) for n in n_grid]
    if len(grid) < MIN_GRID_POINTS:
        raise DomainError(f"[scale] n_grid needs at least {MIN_GRID_POINTS} points, got {len(grid)}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError(f"[scale] n_grid must be strictly ascending, got {grid}")
    if grid[0] < 2:
        raise DomainError(f"[scale] n_grid values must be at least 2, got {grid[0]}")
    return grid


def scaling_experiment(
    params_base: ModelParams,
    n_grid: list[int],
    replicates: int,
    seed: int,
    generator: GeneratorKind = GeneratorKind.ACCELERATED,
    workers: int | None = None,
    quiet: bool = False,
) -> ScalingResult:
    """Mean degree at each N of `n_grid`, with a t-interval over replicates.

    Replicate r uses stream r at every N, so rows are matched across sizes.
    """
    grid = _check_grid(n_grid)
    if replicates < 2:
        raise DomainError(f"[scale] need at least 2 replicates for an interval, got {replicates}")
    runs = [(n, r) for n in grid for r in range(replicates)]
    means = []
    for n, r in tqdm(runs, desc="[scale] replicates", disable=quiet):
        g = replicate_graph(params_base.with_n(n), seed, r, generator, workers)
        means.append({"n": n, "mean_degree": 2.0 * g.n_edges / n})

    quantile = student_t.ppf(0.5 + 0.5 * CI_LEVEL, replicates - 1)
    table = (
        pl.DataFrame(means, schema={"n": pl.Int64, "mean_degree": pl.Float64})
        .group_by("n")
        .agg(
            pl.col("mean_degree").mean(),
            (pl.col("mean_degree").std() / math.sqrt(replicates)).alias("stderr"),
            pl.len().cast(pl.Int64).alias("replicates"),
        )
        .sort("n")
        .with_columns(
            pl.col("n").log().alias("ln_n"),
            (pl.col("mean_degree") - quantile * pl.col("stderr")).alias("ci_low"),
            (pl.col("mean_degree") + quantile * pl.col("stderr")).alias("ci_high"),
        )
        .select(list(scaling_schema))
        .cast(scaling_schema)
    )
    ln_n = table["ln_n"].to_numpy()
    mean = table["mean_degree"].to_numpy()
    loglog = LinearFit.of(ln_n, np.log(mean)) if (mean > 0).all() else None
    return ScalingResult(table, LinearFit.of(ln_n, mean), loglog)


@dataclass(frozen=True)
class ConditionalDegree:
    empirical_mean: float
    predicted: float
    n_window: int
    x0: float
    extrapolated: bool

    @property
    def ratio(self) -> float:
        return self.empirical_mean / self.predicted if self.predicted > 0 else math.nan


def conditional_degree_check(
    g: Graph, t_star: float, window: float, omega: float | None = None
) -> ConditionalDegree:
    """Mean degree of vertices with |t_u − t*| ≤ window against E[D | t*].

    `extrapolated` is set when t* lies beyond the cutoff x₀, where the
    prediction is not backed by the limit theory.
    """
    if window < 0:
        raise DomainError(f"[analysis] window must be non-negative, got {window}")
    in_window = np.abs(g.positions.t - t_star) <= window
    n_window = int(in_window.sum())
    if n_window == 0:
        raise InsufficientDataError(
            f"[analysis] empty window: no vertex has |t - {t_star:g}| <= {window:g}"
        )
    cutoff = EffectiveCutoff.from_params(g.params, omega)
    return ConditionalDegree(
        empirical_mean=float(g.degrees[in_window].mean()),
        predicted=expected_degree(t_star, g.params),
        n_window=n_window,
        x0=cutoff.x0,
        extrapolated=t_star > cutoff.x0,
    )


def degree_correlation(samples: np.ndarray) -> np.ndarray:
    """Pearson matrix of the columns of `samples`; a constant column correlates 0 with the rest."""
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise InsufficientDataError(
            f"[analysis] insufficient samples: need at least 2 rows, got shape {x.shape}"
        )
    centred = x - x.mean(axis=0)
    scale = np.sqrt((centred**2).sum(axis=0))
    safe = np.where(scale > 0, scale, 1.0)
    unit = centred / safe
    corr = np.clip(unit.T @ unit, -1.0, 1.0)
    corr[scale == 0, :] = 0.0
    corr[:, scale == 0] = 0.0
    np.fill_diagonal(corr, 1.0)
    return corr


@dataclass(frozen=True)
class IndependenceSummary:
    correlation: np.ndarray
    max_abs: float
    samples: int
    m: int

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "samples": self.samples,
            "max_abs_correlation": self.max_abs,
            "correlation": self.correlation.tolist(),
        }


def independence_check(
    params: ModelParams,
    m: int,
    samples: int,
    seed: int,
    generator: GeneratorKind = GeneratorKind.ACCELERATED,
    workers: int | None = None,
    quiet: bool = False,
) -> IndependenceSummary:
    """Degrees of vertices 0..m−1 over `samples` independent graphs, and their correlations.

    Positions are resampled for every graph, so the designated vertices are
    placed afresh each time.
    """
    if params.regime is not Regime.COLD:
        raise DomainError("[analysis] independence_check is defined in the cold regime only")
    if not 2 <= m <= min(MAX_DESIGNATED, params.n_vertices):
        raise DomainError(f"[analysis] m must lie in [2, {MAX_DESIGNATED}] and not exceed N, got {m}")
    if samples < 2:
        raise InsufficientDataError(f"[analysis] insufficient samples: {samples} < 2")
    degrees = np.empty((samples, m), dtype=np.int64)
    for s in tqdm(range(samples), desc="[analysis] independence", disable=quiet):
        degrees[s] = replicate_graph(params, seed, s, generator, workers).degrees[:m]
    corr = degree_correlation(degrees)
    off_diagonal = np.abs(corr[~np.eye(m, dtype=bool)])
    return IndependenceSummary(corr, float(off_diagonal.max()), samples, m)
