"""Text formats for graphs and positions, JSON/CSV outputs, and atomic writes.

Edge list::

    #hrg v1
    #params N zeta alpha beta seed
    #provenance kind stream disc
    u v
    ...

Positions: `#hrg v1` then `i r theta`, with 17 significant digits so every
double survives the round trip.
"""

from __future__ import annotations

import io
import os
from pathlib import Path

import numpy as np
import orjson
import polars as pl

from .config import (
    EDGES_FILE,
    FLOAT_FMT,
    FORMAT_HEADER,
    PARAMS_PREFIX,
    POSITIONS_FILE,
    PROVENANCE_PREFIX,
    SCHEMA_VERSION,
    GeneratorKind,
)
from .errors import DomainError, FormatError
from .generator.graph import Graph, Provenance, edge_schema
from .model.params import ModelParams, PositionTable

position_schema = {"i": pl.Int64, "r": pl.Float64, "theta": pl.Float64}


def atomic_write(path: Path, data: bytes | str) -> Path:
    """Write to a temporary sibling, then rename over `path`."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp")
    payload = data.encode() if isinstance(data, str) else data
    with open(tmp, "wb") as f:
        f.write(payload)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)
    return path


def _g(x: float) -> str:
    return format(x, FLOAT_FMT)


def edges_text(g: Graph) -> str:
    p, prov = g.params, g.provenance
    header = [
        FORMAT_HEADER,
        f"{PARAMS_PREFIX} {p.n_vertices} {_g(p.zeta)} {_g(p.alpha)} {_g(p.beta)} {prov.seed}",
        f"{PROVENANCE_PREFIX} {prov.kind} {prov.stream} {int(p.disc)}",
    ]
    body = "".join(f"{u} {v}\n" for u, v in g.edges.tolist())
    return "\n".join(header) + "\n" + body


def positions_text(positions: PositionTable) -> str:
    rows = "".join(
        f"{i} {_g(r)} {_g(theta)}\n"
        for i, (r, theta) in enumerate(zip(positions.r.tolist(), positions.theta.tolist()))
    )
    return FORMAT_HEADER + "\n" + rows


def write_graph(g: Graph, out_dir: Path) -> tuple[Path, Path]:
    """Write `edges.txt` and `positions.txt` into `out_dir`."""
    edges = atomic_write(out_dir / EDGES_FILE, edges_text(g))
    positions = atomic_write(out_dir / POSITIONS_FILE, positions_text(g.positions))
    return edges, positions


def _split(path: Path) -> tuple[list[str], str]:
    """Header (`#`) lines and the remaining body, after checking the version line."""
    text = path.read_text()
    lines = text.splitlines(keepends=True)
    if not lines or lines[0].rstrip("\n") != FORMAT_HEADER:
        raise FormatError(f"[io] {path}: first line must be {FORMAT_HEADER!r}")
    header = [ln.rstrip("\n") for ln in lines if ln.startswith("#")]
    body = "".join(ln for ln in lines if not ln.startswith("#") and ln.strip())
    return header, body


def _table(body: str, schema: dict, path: Path) -> pl.DataFrame:
    if not body:
        return pl.DataFrame(schema=schema)
    try:
        return pl.read_csv(io.StringIO(body), separator=" ", has_header=False, schema=schema)
    except (pl.exceptions.PolarsError, ValueError) as e:
        raise FormatError(f"[io] {path}: malformed rows ({e})") from e


def _header_fields(header: list[str], prefix: str, count: int, path: Path) -> list[str]:
    for line in header:
        fields = line.split()
        if fields and fields[0] == prefix:
            if len(fields) != count + 1:
                raise FormatError(f"[io] {path}: {prefix} needs {count} fields, got {line!r}")
            return fields[1:]
    raise FormatError(f"[io] {path}: missing {prefix} line")


def read_positions(path: Path, params: ModelParams) -> PositionTable:
    _, body = _split(path)
    frame = _table(body, position_schema, path)
    if frame.height != params.n_vertices or not frame["i"].equals(
        pl.Series("i", np.arange(frame.height), dtype=pl.Int64)
    ):
        raise FormatError(f"[io] {path}: expected rows i = 0..{params.n_vertices - 1} in order")
    return PositionTable(frame["r"].to_numpy(), frame["theta"].to_numpy(), params.radius)


def read_graph(out_dir: Path) -> Graph:
    """Inverse of `write_graph`; the result equals the graph that was written."""
    edges_path, positions_path = out_dir / EDGES_FILE, out_dir / POSITIONS_FILE
    header, body = _split(edges_path)
    n, zeta, alpha, beta, seed = _header_fields(header, PARAMS_PREFIX, 5, edges_path)
    kind, stream, disc = _header_fields(header, PROVENANCE_PREFIX, 3, edges_path)
    try:
        params = ModelParams(int(n), float(zeta), float(alpha), float(beta), disc=disc == "1")
        provenance = Provenance(seed=int(seed), kind=GeneratorKind(kind), stream=int(stream))
    except (ValueError, DomainError) as e:
        raise FormatError(f"[io] {edges_path}: bad header ({e})") from e

    edges = _table(body, edge_schema, edges_path).to_numpy().reshape(-1, 2)
    if len(edges):
        u, v = edges[:, 0], edges[:, 1]
        keys = u * params.n_vertices + v
        if not ((u >= 0).all() and (u < v).all() and (v < params.n_vertices).all()):
            raise FormatError(f"[io] {edges_path}: edges must satisfy 0 <= u < v < N")
        if not (np.diff(keys) > 0).all():
            raise FormatError(f"[io] {edges_path}: edges must be sorted and unique")
    positions = read_positions(positions_path, params)
    return Graph(params, positions, edges, provenance)


def dump_json(payload: dict) -> bytes:
    """orjson with the schema stamp; numpy arrays serialise directly."""
    return orjson.dumps(
        {"schema": SCHEMA_VERSION} | payload,
        option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_NON_STR_KEYS,
    )


def write_json(path: Path, payload: dict) -> Path:
    return atomic_write(path, dump_json(payload))


def write_csv(path: Path, frame: pl.DataFrame) -> Path:
    buffer = io.BytesIO()
    frame.write_csv(buffer)
    return atomic_write(path, buffer.getvalue())


def read_config_file(path: Path) -> dict:
    """A JSON object of RunConfig fields."""
    try:
        data = orjson.loads(path.read_bytes())
    except orjson.JSONDecodeError as e:
        raise FormatError(f"[config] {path}: invalid JSON ({e})") from e
    if not isinstance(data, dict):
        raise FormatError(f"[config] {path}: expected a JSON object")
    return data
