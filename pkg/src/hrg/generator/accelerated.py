"""Envelope-rejection generator with the same per-pair edge law as the naive path.

Vertices are grouped into radial bands of width ln 2/ζ, so that A(t_u, t_v)
changes by at most a factor 2 across any band pair. Around each vertex u of
band i, band j is cut into angular shells [φ_k, φ_{k+1}) of doubling width,
starting from the angle at which the band pair's distance bound crosses R.
A cell (i, j, k) has one envelope p̄ = p(d_min), where d_min lower-bounds the
distance of every pair in it. Candidates of a cell are laid end to end, hit by
geometric skipping at rate p̄, and kept with probability p/p̄; every pair sits
in exactly one cell, so each edge appears with probability exactly p.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..config import ACCELERATED_BETA_MIN, GeneratorKind, worker_count
from ..errors import EnvelopeError
from ..model.geometry import (
    TWO_PI,
    asinh_exp,
    hyperbolic_distance,
    log_sinh,
)
from ..model.params import ModelParams, PositionTable
from ..model.probability import connection_probability
from ..sampler.seeding import SampleSeed, cell_rng
from .graph import Graph, Provenance
from .naive import generate_naive

# Shells start slightly inside their nominal angle so rounding in the angle
# arithmetic can never leave a pair below its envelope
_SHELL_SHRINK = 1.0 - 1e-9


@dataclass(frozen=True)
class Band:
    members: np.ndarray  # global vertex ids, sorted by angle
    theta: np.ndarray  # their angles, ascending
    r_lo: float
    r_hi: float


def band_layout(positions: PositionTable, params: ModelParams) -> list[Band]:
    """Bands of type width ln 2/ζ; empty bands are dropped."""
    if not params.disc and params.beta < ACCELERATED_BETA_MIN:
        raise EnvelopeError(f"beta={params.beta} below {ACCELERATED_BETA_MIN}")
    if not (np.isfinite(positions.r).all() and np.isfinite(positions.theta).all()):
        raise EnvelopeError("non-finite positions")
    width = math.log(2.0) / params.zeta
    n_bands = max(1, math.ceil(params.radius / width))
    band_of = np.minimum((positions.t / width).astype(np.int64), n_bands - 1)
    band_of = np.maximum(band_of, 0)
    bands = []
    for b in np.unique(band_of):
        idx = np.flatnonzero(band_of == b)
        order = np.argsort(positions.theta[idx], kind="stable")
        members = idx[order]
        r = positions.r[members]
        bands.append(Band(members, positions.theta[members], float(r.min()), float(r.max())))
    return bands


def shell_edges(lo_u: float, lo_v: float, params: ModelParams) -> np.ndarray:
    """Angular breakpoints 0 < φ_1 < … < π, doubling from the band pair's crossing angle."""
    zeta, radius = params.zeta, params.radius
    sin_half = math.exp(0.5 * zeta * (radius - lo_u - lo_v))
    if sin_half >= 1.0:
        return np.array([0.0, math.pi])
    phi = 2.0 * math.asin(sin_half)
    n_inner = max(0, math.ceil(math.log2(math.pi / phi)))
    inner = phi * 2.0 ** np.arange(n_inner)
    return np.concatenate([[0.0], inner[inner < math.pi], [math.pi]])


def envelope(
    lo_u: float, hi_u: float, lo_v: float, hi_v: float, phi: np.ndarray, params: ModelParams
) -> np.ndarray:
    """p̄ per shell: p at the smallest distance any pair in the cell can have."""
    zeta = params.zeta
    gap = max(0.0, lo_u - hi_v, lo_v - hi_u)
    radial = 2.0 * log_sinh(0.5 * zeta * gap)
    with np.errstate(divide="ignore"):
        angular = (
            log_sinh(zeta * lo_u)
            + log_sinh(zeta * lo_v)
            + 2.0 * np.log(np.sin(0.5 * phi * _SHELL_SHRINK))
        )
    d_min = (2.0 / zeta) * asinh_exp(0.5 * np.logaddexp(radial, angular))
    if params.disc:
        p_bar = np.where(d_min < params.radius, 1.0, 0.0)
    else:
        p_bar = np.asarray(connection_probability(d_min, params))
    if not np.isfinite(p_bar).all():
        raise EnvelopeError("non-finite envelope")
    return p_bar


def geometric_hits(rng: np.random.Generator, total: int, p: float) -> np.ndarray:
    """Indices in [0, total) each hit independently with probability p, by skipping."""
    if total <= 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    log_q = math.log1p(-p) if p < 1.0 else -math.inf
    hits = []
    pos = -1.0
    while pos < total - 1:
        remaining = total - 1 - pos
        size = max(1, int(min(remaining, 1.2 * remaining * p + 32)))
        jumps = np.floor(np.log(1.0 - rng.random(size)) / log_q) + 1.0
        cum = pos + np.cumsum(jumps)
        hits.append(cum[cum < total])
        pos = cum[-1]
    return np.concatenate(hits).astype(np.int64)


def _band_pair_edges(
    bands: list[Band],
    bi: int,
    bj: int,
    positions: PositionTable,
    params: ModelParams,
    seed: SampleSeed,
) -> tuple[np.ndarray, np.ndarray]:
    band_u, band_v = bands[bi], bands[bj]
    n_v = band_v.members.shape[0]
    phi = shell_edges(band_u.r_lo, band_v.r_lo, params)
    p_bar = envelope(band_u.r_lo, band_u.r_hi, band_v.r_lo, band_v.r_hi, phi[:-1], params)
    n_shells = phi.shape[0] - 1

    # Forward offsets 0, φ_1 … π then back round to 2π: 2K segments of u's full circle
    offsets = np.concatenate([phi, TWO_PI - phi[-2::-1]])
    ext = np.concatenate([band_v.theta, band_v.theta + TWO_PI])
    a = band_u.theta
    cuts = np.searchsorted(ext, a[:, None] + offsets[None, :], side="left")
    start = cuts[:, :1]
    cuts = np.minimum(cuts, start + n_v)
    cuts[:, -1] = start[:, 0] + n_v

    us, vs = [], []
    for k in range(n_shells):
        if p_bar[k] <= 0.0:
            continue
        seg = [k, 2 * n_shells - 1 - k]
        seg_start = cuts[:, seg].ravel()
        seg_len = cuts[:, [s + 1 for s in seg]].ravel() - seg_start
        seg_end = np.cumsum(seg_len)
        total = int(seg_end[-1]) if seg_end.size else 0
        rng = cell_rng(seed.seed, seed.stream_id, bi, bj, k)
        hits = geometric_hits(rng, total, float(p_bar[k]))
        if hits.size == 0:
            continue
        owner = np.searchsorted(seg_end, hits, side="right")
        local = seg_start[owner] + hits - (seg_end[owner] - seg_len[owner])
        u = band_u.members[owner // 2]
        v = band_v.members[local % n_v]
        if bi == bj:
            # Each unordered pair is offered from both ends; keep one
            keep = u < v
            u, v = u[keep], v[keep]
        r, theta = positions.r, positions.theta
        d = hyperbolic_distance(r[u], theta[u], r[v], theta[v], params.zeta)
        if params.disc:
            accept = d < params.radius
        else:
            p = connection_probability(d, params)
            accept = rng.random(u.shape[0]) * p_bar[k] < p
        us.append(u[accept])
        vs.append(v[accept])
    if not us:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(us), np.concatenate(vs)


def generate_accelerated(
    positions: PositionTable,
    params: ModelParams,
    seed: SampleSeed,
    workers: int | None = None,
) -> Graph:
    """Near-linear generation in the cold regime; same edge law as `generate_naive`.

    Falls back to the naive generator, with a notice on stderr, when no usable
    envelope exists (β too close to 0, non-finite geometry).
    """
    try:
        bands = band_layout(positions, params)
    except EnvelopeError as e:
        print(
            f"[generate] Accelerated envelope unavailable ({e}); falling back to naive",
            file=sys.stderr,
            flush=True,
        )
        return generate_naive(positions, params, seed, workers=workers)

    pairs = [(i, j) for i in range(len(bands)) for j in range(i, len(bands))]

    def run(pair: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        return _band_pair_edges(bands, *pair, positions, params, seed)

    workers = min(workers or worker_count(), max(len(pairs), 1))
    if workers <= 1:
        parts = [run(p) for p in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="accel") as pool:
            parts = list(pool.map(run, pairs))
    u = np.concatenate([p[0] for p in parts]) if parts else np.empty(0, np.int64)
    v = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, np.int64)
    kind = GeneratorKind.DISC if params.disc else GeneratorKind.ACCELERATED
    provenance = Provenance(seed=seed.seed, kind=kind, stream=seed.stream_id)
    return Graph.from_pairs(params, positions, u, v, provenance)
