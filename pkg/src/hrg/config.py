"""Configuration constants for the hyperbolic random graph toolkit."""

import os
from enum import IntEnum, StrEnum
from pathlib import Path

# Directory names
OUTPUT_DIR = Path("results")

# Files written into an output directory by `generate`, `analyze` and `scale`
EDGES_FILE = "edges.txt"
POSITIONS_FILE = "positions.txt"
REPORT_FILE = "report.json"
HISTOGRAM_FILE = "histogram.csv"
PREDICTION_FILE = "prediction.json"
SCALING_CSV = "scaling.csv"
SCALING_JSON = "scaling.json"
VALIDATION_FILE = "validation.json"

# Text formats: version header, then `#params N zeta alpha beta seed`
FORMAT_HEADER = "#hrg v1"
PARAMS_PREFIX = "#params"
PROVENANCE_PREFIX = "#provenance"
# 17 significant digits round-trip every IEEE double
FLOAT_FMT = ".17g"

# Version stamped into every JSON document we emit
SCHEMA_VERSION = 1

# Worker cap for every thread pool in the package
THREADS_ENV = "HRG_THREADS"


class Regime(StrEnum):
    COLD = "cold"
    CRITICAL = "critical"
    HOT = "hot"


class GeneratorKind(StrEnum):
    NAIVE = "naive"
    ACCELERATED = "accelerated"
    DISC = "disc"
    CHUNG_LU = "chung_lu"


class Command(StrEnum):
    GENERATE = "generate"
    PREDICT = "predict"
    ANALYZE = "analyze"
    VALIDATE = "validate"
    SCALE = "scale"


class ExitCode(IntEnum):
    OK = 0
    USAGE = 1
    VALIDATION = 2
    IO = 3


# Model defaults (the α = ζ = 1, β = 2 cold profile used throughout the checks)
DEFAULT_N = 10_000
DEFAULT_ZETA = 1.0
DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 2.0
DEFAULT_SEED = 0
DEFAULT_STREAM = 0

# Analysis knobs
DEFAULT_K_MIN = 10
DEFAULT_K_CAP = 30
# Fewer tail vertices than this and the power-law MLE is refused
MIN_TAIL_SIZE = 100
DEFAULT_REPLICATES = 5
DEFAULT_N_GRID = tuple(2**e for e in range(10, 17))
DEFAULT_M = 2
DEFAULT_SAMPLES = 500

# Quadrature: relative tolerance for every oracle integral, and the bound the
# mixed-Poisson truncation remainder has to stay under
QUAD_REL_TOL = 1e-10
QUAD_LIMIT = 400
MP_REMAINDER_TOL = 1e-13

# Accelerated generator: below this β the envelope degenerates to p̄ ≈ 1/2
# everywhere and we fall back to the naive path
ACCELERATED_BETA_MIN = 1e-3
# Target size (pairs) of one naive block, bounds peak memory per worker
NAIVE_BLOCK_PAIRS = 2_000_000


def worker_count() -> int:
    """Worker cap from `HRG_THREADS`, falling back to the CPU count."""
    if (cap := os.environ.get(THREADS_ENV)) is not None:
        try:
            workers = int(cap)
        except ValueError:
            raise ValueError(f"[config] {THREADS_ENV}={cap!r} is not an integer")
        if workers < 1:
            raise ValueError(f"[config] {THREADS_ENV}={cap!r} must be positive")
        return workers
    return os.cpu_count() or 1
