"""Run configuration: defaults, then a JSON config file, then command-line flags."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .config import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_K_CAP,
    DEFAULT_K_MIN,
    DEFAULT_M,
    DEFAULT_N,
    DEFAULT_N_GRID,
    DEFAULT_REPLICATES,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_STREAM,
    DEFAULT_ZETA,
    OUTPUT_DIR,
    Command,
    GeneratorKind,
)
from .errors import DomainError
from .formats import read_config_file
from .model.params import ModelParams
from .sampler.seeding import SampleSeed

# Generators a run may request; the disc model is selected with `disc`
SELECTABLE_GENERATORS = (GeneratorKind.NAIVE, GeneratorKind.ACCELERATED, GeneratorKind.CHUNG_LU)


@dataclass(frozen=True)
class RunConfig:
    command: Command
    n: int = DEFAULT_N
    zeta: float = DEFAULT_ZETA
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    disc: bool = False
    seed: int = DEFAULT_SEED
    stream: int = DEFAULT_STREAM
    generator: GeneratorKind = GeneratorKind.ACCELERATED
    out: Path = OUTPUT_DIR
    graph: Path | None = None
    n_grid: tuple[int, ...] = DEFAULT_N_GRID
    replicates: int = DEFAULT_REPLICATES
    k_min: int = DEFAULT_K_MIN
    k_cap: int = DEFAULT_K_CAP
    m: int = DEFAULT_M
    samples: int = DEFAULT_SAMPLES
    omega: float | None = None
    quiet: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "command", Command(self.command))
        object.__setattr__(self, "out", Path(self.out))
        if self.graph is not None:
            object.__setattr__(self, "graph", Path(self.graph))
        try:
            kind = GeneratorKind(self.generator)
        except ValueError:
            kind = None
        if kind not in SELECTABLE_GENERATORS:
            choices = ", ".join(SELECTABLE_GENERATORS)
            raise DomainError(f"[config] generator must be one of {choices}, got {self.generator!r}")
        object.__setattr__(self, "generator", kind)
        for name in ("n", "seed", "stream", "replicates", "k_min", "k_cap", "m", "samples"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError(f"[config] {name} must be an integer, got {value!r}")
        for name, low in (("k_min", 1), ("k_cap", 0), ("replicates", 1), ("m", 1), ("samples", 1)):
            if getattr(self, name) < low:
                raise DomainError(f"[config] {name} must be at least {low}, got {getattr(self, name)}")
        grid = tuple(self.n_grid)
        if not grid or any(isinstance(v, bool) or not isinstance(v, int) or v < 1 for v in grid):
            raise DomainError(f"[config] n_grid must be positive integers, got {list(grid)}")
        object.__setattr__(self, "n_grid", grid)
        for name in ("zeta", "alpha", "beta", "omega"):
            value = getattr(self, name)
            if value is None and name == "omega":
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DomainError(f"[config] {name} must be a real number, got {value!r}")
        if self.omega is not None and not (math.isfinite(self.omega) and self.omega >= 0):
            raise DomainError(f"[config] omega must be a non-negative real, got {self.omega!r}")
        if not isinstance(self.disc, bool) or not isinstance(self.quiet, bool):
            raise DomainError("[config] disc and quiet must be booleans")
        # Same rules as the model itself
        _ = (self.params, self.sample_seed)

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.n, self.zeta, self.alpha, self.beta, disc=self.disc)

    @property
    def sample_seed(self) -> SampleSeed:
        return SampleSeed(self.seed, self.stream)

    @property
    def graph_dir(self) -> Path:
        return self.out if self.graph is None else self.graph

    @classmethod
    def keys(cls) -> set[str]:
        return {f.name for f in fields(cls)} - {"command"}

    @classmethod
    def from_sources(
        cls, command: Command, flags: dict, config_path: Path | None = None
    ) -> RunConfig:
        """Merge in precedence order: flags over the config file over defaults.

        `flags` holds only the flags actually given (None means not given).
        """
        config = cls(command)
        if config_path is not None:
            config = config.merged(read_config_file(config_path), source=str(config_path))
        given = {k: v for k, v in flags.items() if v is not None}
        return config.merged(given, source="flags")

    def merged(self, overrides: dict, source: str) -> RunConfig:
        if unknown := sorted(set(overrides) - self.keys()):
            raise DomainError(f"[config] unknown keys in {source}: {', '.join(unknown)}")
        if "n_grid" in overrides:
            overrides = overrides | {"n_grid": tuple(overrides["n_grid"])}
        for name in ("zeta", "alpha", "beta", "omega"):
            value = overrides.get(name)
            if isinstance(value, int) and not isinstance(value, bool):
                overrides = overrides | {name: float(value)}
        return replace(self, **overrides)
