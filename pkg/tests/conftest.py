import numpy as np
import pytest

from hrg.model import ModelParams, PositionTable
from hrg.sampler import SampleSeed, sample_positions


@pytest.fixture
def cold() -> ModelParams:
    return ModelParams(2000, 1.0, 1.0, 2.0)


@pytest.fixture
def seed() -> SampleSeed:
    return SampleSeed(7)


@pytest.fixture
def cold_positions(cold, seed) -> PositionTable:
    return sample_positions(cold, seed, workers=1)


def table(r, theta, params: ModelParams) -> PositionTable:
    return PositionTable(np.asarray(r, float), np.asarray(theta, float), params.radius)
