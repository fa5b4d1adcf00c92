"""Model parameters and vertex positions in the native representation."""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..config import Regime
from ..errors import DomainError


def _positive(name: str, value: float) -> float:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"[config] {name} must be a positive finite real, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class ModelParams:
    """Parameters of G(N; ζ, α, β), with the derived disc radius R = (2/ζ) ln N.

    `disc` switches to the β → ∞ limit (edge iff d < R); β stays a finite real
    everywhere in the maths and is ignored by the edge rule in that mode.
    """

    n_vertices: int
    zeta: float
    alpha: float
    beta: float
    disc: bool = False
    radius: float = field(init=False)

    def __post_init__(self) -> None:
        if isinstance(self.n_vertices, bool) or int(self.n_vertices) != self.n_vertices:
            raise DomainError(f"[config] n_vertices must be an integer, got {self.n_vertices!r}")
        if self.n_vertices < 1:
            raise DomainError(f"[config] n_vertices must be positive, got {self.n_vertices}")
        object.__setattr__(self, "n_vertices", int(self.n_vertices))
        for name in ("zeta", "alpha", "beta"):
            object.__setattr__(self, name, _positive(name, getattr(self, name)))
        object.__setattr__(self, "disc", bool(self.disc))
        object.__setattr__(self, "radius", 2.0 / self.zeta * math.log(self.n_vertices))

    @property
    def theory_valid(self) -> bool:
        """Every limit theorem assumes 0 < ζ/α < 2."""
        return self.zeta / self.alpha < 2.0

    @property
    def regime(self) -> Regime:
        if self.disc or self.beta > 1.0:
            return Regime.COLD
        if self.beta == 1.0:
            return Regime.CRITICAL
        return Regime.HOT

    def with_n(self, n_vertices: int) -> ModelParams:
        """Same model at another size (R follows N)."""
        return ModelParams(n_vertices, self.zeta, self.alpha, self.beta, disc=self.disc)

    def to_dict(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "zeta": self.zeta,
            "alpha": self.alpha,
            "beta": self.beta,
            "disc": self.disc,
            "radius": self.radius,
        }


@dataclass(frozen=True)
class VertexPosition:
    """Polar position (r, θ) with the type t = R − r."""

    r: float
    theta: float
    t: float

    @classmethod
    def from_polar(cls, r: float, theta: float, params: ModelParams) -> VertexPosition:
        radius = params.radius
        if not 0.0 <= r <= radius:
            raise DomainError(f"[sample] r={r!r} outside [0, R={radius!r}]")
        if not 0.0 <= theta <= 2 * math.pi:
            raise DomainError(f"[sample] theta={theta!r} outside (0, 2π]")
        return cls(r=float(r), theta=float(theta), t=radius - float(r))

    @classmethod
    def from_type(cls, t: float, theta: float, params: ModelParams) -> VertexPosition:
        return cls.from_polar(params.radius - t, theta, params)


@dataclass(frozen=True, eq=False)
class PositionTable(Sequence[VertexPosition]):
    """Immutable column store of N vertex positions, indexed 0..N−1.

    Behaves as a sequence of `VertexPosition`; the numpy columns are what the
    generators and analyses actually consume.
    """

    r: np.ndarray
    theta: np.ndarray
    radius: float

    def __post_init__(self) -> None:
        r = np.ascontiguousarray(self.r, dtype=np.float64)
        theta = np.ascontiguousarray(self.theta, dtype=np.float64)
        if r.shape != theta.shape or r.ndim != 1:
            raise DomainError("[sample] r and theta must be 1-D arrays of equal length")
        r.setflags(write=False)
        theta.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)

    @property
    def t(self) -> np.ndarray:
        return self.radius - self.r

    def __len__(self) -> int:
        return self.r.shape[0]

    def __getitem__(self, idx):  # type: ignore[override]
        if isinstance(idx, slice):
            return PositionTable(self.r[idx], self.theta[idx], self.radius)
        r = float(self.r[idx])
        return VertexPosition(r=r, theta=float(self.theta[idx]), t=self.radius - r)

    def __iter__(self) -> Iterator[VertexPosition]:
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PositionTable):
            return NotImplemented
        return (
            self.radius == other.radius
            and np.array_equal(self.r, other.r)
            and np.array_equal(self.theta, other.theta)
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_positions(
        cls, positions: Sequence[VertexPosition], params: ModelParams
    ) -> PositionTable:
        return cls(
            np.array([p.r for p in positions], dtype=np.float64),
            np.array([p.theta for p in positions], dtype=np.float64),
            params.radius,
        )


@dataclass(frozen=True)
class PairGeometry:
    """Pairwise quantities of the distance expansion."""

    distance: float
    rel_angle: float
    a_factor: float
    theta_hat: float
