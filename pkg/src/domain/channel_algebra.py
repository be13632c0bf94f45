from functools import reduce
from typing import Optional, Sequence

import numpy as np

from domain.errors import DimensionMismatchError, InvalidArgumentError, InvalidDistributionError
from domain.models import Channel, ComputationBudget, Distribution, as_distribution


def bsc(eta: float) -> Channel:
    """Binary symmetric channel D_eta."""
    if not 0.0 <= eta <= 1.0:
        raise InvalidArgumentError(f"crossover probability must lie in [0, 1], got {eta}")
    return Channel(np.array([[1.0 - eta, eta], [eta, 1.0 - eta]]))


def identity_channel(size: int) -> Channel:
    if size < 1:
        raise InvalidArgumentError(f"alphabet size must be >= 1, got {size}")
    return Channel(np.eye(size))


def uniform(size: int) -> Distribution:
    return Distribution.uniform(size)


def binary_convolution(a: float, b: float) -> float:
    """a * b = a + b - 2ab, the crossover of two cascaded binary symmetric channels."""
    return a + b - 2.0 * a * b


def compose(first: Channel, second: Channel) -> Channel:
    """Cascade first: A->B with second: B->C, i.e. the matrix product first @ second."""
    if first.output_size != second.input_size:
        raise DimensionMismatchError(
            f"cannot compose {first.input_size}x{first.output_size} with {second.input_size}x{second.output_size}",
            first.output_size,
            second.input_size,
        )
    return Channel(first.rows @ second.rows)


def convex_combine(channels: Sequence[Channel], weights: Distribution | Sequence[float]) -> Channel:
    if not channels:
        raise InvalidArgumentError("convex_combine needs at least one channel")
    weights = as_distribution(weights)
    if weights.size != len(channels):
        raise DimensionMismatchError(
            f"{len(channels)} channels but {weights.size} weights", len(channels), weights.size
        )
    shape = channels[0].rows.shape
    for i, ch in enumerate(channels):
        if ch.rows.shape != shape:
            raise DimensionMismatchError(f"channel {i} has shape {ch.rows.shape}, expected {shape}")
    stacked = np.stack([ch.rows for ch in channels])
    return Channel(np.tensordot(weights.probs, stacked, axes=1))


def product_extension(channel: Channel, n: int, budget: Optional[ComputationBudget] = None) -> Channel:
    """
    n-th memoryless extension. Sequences are indexed lexicographically with the
    first letter most significant, the ordering used everywhere in the code lab.
    """
    if n < 1:
        raise InvalidArgumentError(f"blocklength must be >= 1, got {n}")
    budget = budget or ComputationBudget()
    budget.require("channel extension", channel.input_size * channel.output_size, n)
    budget.allocate("channel extension", (channel.input_size**n, channel.output_size**n), np.float64)
    return Channel(reduce(np.kron, [channel.rows] * n))


def extension_row(channel: Channel, word: np.ndarray) -> np.ndarray:
    """W^n(. | x^n) as a dense vector over B^n for one input word given by its letters."""
    return reduce(np.kron, [channel.rows[a] for a in np.asarray(word, dtype=np.int64)])


def output_distribution(p: Distribution | Sequence[float], channel: Channel) -> Distribution:
    p = as_distribution(p)
    if p.size != channel.input_size:
        raise DimensionMismatchError(
            f"input distribution of size {p.size} for a channel with {channel.input_size} inputs",
            channel.input_size,
            p.size,
        )
    return Distribution(p.probs @ channel.rows)


def renormalize(values: Sequence[float] | np.ndarray) -> Distribution:
    """Explicit rescaling of a non-negative vector to unit mass."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidArgumentError("renormalize expects a non-empty vector")
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise InvalidDistributionError("renormalize expects finite non-negative entries")
    total = arr.sum()
    if total <= 0.0:
        raise InvalidDistributionError("cannot renormalize a vector with zero mass")
    return Distribution(arr / total)


def permute_outputs(channel: Channel, permutation: Sequence[int]) -> Channel:
    perm = np.asarray(permutation, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(channel.output_size)):
        raise InvalidArgumentError(f"{list(perm)} is not a permutation of the {channel.output_size} outputs")
    return Channel(channel.rows[:, perm])
