from collections.abc import Callable

from ..config import GeneratorKind
from .accelerated import generate_accelerated
from .chung_lu import generate_chung_lu
from .graph import Graph, Provenance, degree_sequence
from .naive import generate_naive

# Generators selectable by name; the disc model is a parameter flag, not a kind here
GENERATORS: dict[GeneratorKind, Callable[..., Graph]] = {
    GeneratorKind.NAIVE: generate_naive,
    GeneratorKind.ACCELERATED: generate_accelerated,
    GeneratorKind.CHUNG_LU: generate_chung_lu,
}

__all__ = [
    "GENERATORS",
    "Graph",
    "Provenance",
    "degree_sequence",
    "generate_accelerated",
    "generate_chung_lu",
    "generate_naive",
]
