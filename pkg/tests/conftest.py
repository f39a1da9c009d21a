import numpy as np
import pytest
from click.testing import CliRunner

from musubi.algebra import HAMILTON, PureVector, Quaternion
from musubi.words import GroupWord


def random_word(rng: np.random.Generator, max_length: int = 12) -> GroupWord:
    length = int(rng.integers(1, max_length + 1))
    letters = [
        (str(rng.choice(["a", "b"])), int(rng.choice([-1, 1]))) for _ in range(length)
    ]
    return GroupWord(letters)


def random_unit(rng: np.random.Generator) -> Quaternion:
    w, i, j, ij = (float(c) for c in rng.normal(size=4))
    size = float(np.sqrt(w * w + i * i + j * j + ij * ij))
    return Quaternion(w / size, i / size, j / size, ij / size, params=HAMILTON)


def random_vector(rng: np.random.Generator) -> PureVector:
    return PureVector.from_coords(*rng.uniform(-3.0, 3.0, size=3).tolist(), params=HAMILTON)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
