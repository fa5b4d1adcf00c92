"""Counter-based randomness: every draw is a pure function of (seed, stream, counter).

A splitmix64-style finaliser hashes the key and the counter, so vertex i or
pair {i, j} gets the same uniform whichever worker computes it and in
whatever order. Nothing here holds generator state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError

_U64_MAX = 2**64 - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31 = np.uint64(30), np.uint64(27), np.uint64(31)
_S11, _S32 = np.uint64(11), np.uint64(32)
_INV_2_53 = 2.0**-53

# Keys for the separate uses of one seed, so positions and pair draws never collide
POSITION_DOMAIN = 0x01
PAIR_DOMAIN = 0x02
CHUNG_LU_DOMAIN = 0x03
ACCELERATED_DOMAIN = 0x04


@dataclass(frozen=True)
class SampleSeed:
    """Seed plus substream selector; both are unsigned 64-bit integers."""

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"[sample] {name} must be an integer, got {value!r}")
            if not 0 <= value <= _U64_MAX:
                raise DomainError(f"[sample] {name}={value} is not an unsigned 64-bit integer")
            object.__setattr__(self, name, int(value))


def mix64(x: np.ndarray | int) -> np.ndarray:
    """splitmix64 finaliser, elementwise over uint64 (wrapping arithmetic)."""
    z = np.atleast_1d(np.asarray(x, dtype=np.uint64))
    with np.errstate(over="ignore"):
        z = z + _GOLDEN
        z = (z ^ (z >> _S30)) * _MUL1
        z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31)


def derive_key(seed: int, stream: int, domain: int) -> np.uint64:
    """Fold (seed, stream, domain) into one 64-bit key."""
    key = mix64(mix64(mix64(seed) ^ np.uint64(stream)) ^ np.uint64(domain))
    return key[0]


def counter_uniforms(key: np.uint64, counters: np.ndarray) -> np.ndarray:
    """Uniforms in [0, 1) with 53 random bits, one per counter."""
    h = mix64(np.uint64(key) ^ mix64(counters))
    return (h >> _S11).astype(np.float64) * _INV_2_53


def pair_counters(i: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Order-free counter for the unordered pair {i, j} (indices below 2^32)."""
    i = np.asarray(i, dtype=np.uint64)
    j = np.asarray(j, dtype=np.uint64)
    return (np.minimum(i, j) << _S32) | np.maximum(i, j)


def pair_uniforms(
    seed: int, i: np.ndarray, j: np.ndarray, domain: int = PAIR_DOMAIN, stream: int = 0
):
    """u_ij for each pair, a pure function of (seed, stream, min(i,j), max(i,j))."""
    return counter_uniforms(derive_key(seed, stream, domain), pair_counters(i, j))


def cell_rng(seed: int, stream: int, *cell: int) -> np.random.Generator:
    """Independent numpy Generator keyed by a cell of the accelerated layout."""
    return np.random.default_rng([seed & _U64_MAX, stream & _U64_MAX, ACCELERATED_DOMAIN, *cell])
