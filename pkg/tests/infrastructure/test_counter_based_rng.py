import numpy as np
import pytest

from domain.errors import InvalidArgumentError
from domain.random_source import Stream
from infrastructure.random.counter_based_rng import CounterBasedRNG


def draws(source, stream, *indices):
    return source.generator(stream, *indices).random(8)


def test_same_coordinate_gives_same_draws():
    first = draws(CounterBasedRNG(3), Stream.CODEBOOK, 0, 1, 2)
    assert np.array_equal(first, draws(CounterBasedRNG(3), Stream.CODEBOOK, 0, 1, 2))


def test_coordinates_streams_and_seeds_are_independent():
    base = draws(CounterBasedRNG(3), Stream.CODEBOOK, 0, 1, 2)
    assert not np.array_equal(base, draws(CounterBasedRNG(3), Stream.CODEBOOK, 0, 2, 1))
    assert not np.array_equal(base, draws(CounterBasedRNG(3), Stream.PARTITION, 0, 1, 2))
    assert not np.array_equal(base, draws(CounterBasedRNG(4), Stream.CODEBOOK, 0, 1, 2))


def test_invalid_coordinates_are_refused():
    with pytest.raises(InvalidArgumentError):
        CounterBasedRNG(-1)
    with pytest.raises(InvalidArgumentError):
        CounterBasedRNG(0).generator(Stream.CODEBOOK, 0, 0, 0, 0)
    with pytest.raises(InvalidArgumentError):
        CounterBasedRNG(0).generator(Stream.CODEBOOK, -1)
