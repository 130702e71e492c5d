import numpy as np
import pytest

from tscomplex import Series, derive_rng


@pytest.fixture
def rng():
    return derive_rng(12345)


@pytest.fixture
def uniform_series(rng):
    return Series(rng.random(1000), "uniform-1k")


def make_series(values, label=None):
    return Series(np.asarray(values, dtype=float), label)
