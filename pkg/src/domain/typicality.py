"""
Frequency typicality on A^n by exhaustive enumeration.

Sequences are indexed lexicographically with the first letter most significant, which is the
row order of `product_extension`. A word x^n is (p, delta)-typical when every letter frequency
is within delta of p and letters outside the support of p never occur. An output y^n is
conditionally (W, delta)-typical given x^n when every joint count N(a, b) satisfies
|N(a, b)/n - N(a)/n W(b|a)| <= delta and N(a, b) = 0 wherever W(b|a) = 0.
"""

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Optional

import numpy as np

from domain.errors import InvalidArgumentError, PreconditionError
from domain.models import Channel, ComputationBudget, Distribution

TYPICALITY_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class TypicalityParams:
    delta: float
    n: int

    def __post_init__(self) -> None:
        if not self.delta > 0.0:
            raise InvalidArgumentError(f"delta must be > 0, got {self.delta}")
        if self.n < 1:
            raise InvalidArgumentError(f"blocklength must be >= 1, got {self.n}")

    def require_output_bound_range(self, input_size: int, output_size: int) -> None:
        """The output-mass bound is only stated for delta < 1 / (4 |A| |B|)."""
        limit = 1.0 / (4.0 * input_size * output_size)
        if self.delta >= limit:
            raise PreconditionError(
                f"delta = {self.delta} is outside (0, 1/(4*{input_size}*{output_size})) = (0, {limit:.6g})"
            )


def letter_dtype(size: int) -> np.dtype:
    return np.dtype(np.uint8 if size <= 256 else np.int64)


@lru_cache(maxsize=16)
def _letters(size: int, n: int) -> np.ndarray:
    letters = np.indices((size,) * n, dtype=letter_dtype(size)).reshape(n, -1).T
    letters.flags.writeable = False
    return letters


def sequence_letters(size: int, n: int, budget: Optional[ComputationBudget] = None) -> np.ndarray:
    """size^n x n matrix whose row i holds the letters of sequence i."""
    budget = budget or ComputationBudget()
    budget.require("sequence enumeration", size, n)
    budget.allocate("sequence letters", (size**n, n), letter_dtype(size))
    return _letters(size, n)


def sequence_index(word: np.ndarray, size: int) -> int:
    index = 0
    for letter in np.asarray(word, dtype=np.int64):
        index = index * size + int(letter)
    return index


def letter_counts(letters: np.ndarray, size: int) -> np.ndarray:
    """N(a | x^n) for every row of `letters`, shape (rows, size)."""
    return np.stack([(letters == a).sum(axis=1) for a in range(size)], axis=1)


def sequence_probabilities(p: Distribution, n: int, budget: Optional[ComputationBudget] = None) -> np.ndarray:
    """p^n over A^n."""
    budget = budget or ComputationBudget()
    budget.require("i.i.d. law", p.size, n)
    budget.allocate("i.i.d. law", (p.size**n,), np.float64)
    return reduce(np.kron, [p.probs] * n)


def typical_mask(p: Distribution, params: TypicalityParams, budget: Optional[ComputationBudget] = None) -> np.ndarray:
    budget = budget or ComputationBudget()
    letters = sequence_letters(p.size, params.n, budget)
    budget.allocate("letter frequencies", (letters.shape[0], p.size), np.float64)
    frequencies = letter_counts(letters, p.size) / params.n
    close = np.abs(frequencies - p.probs[None, :]) <= params.delta + TYPICALITY_TOLERANCE
    off_support = (p.probs == 0.0)[None, :] & (frequencies > 0.0)
    return np.all(close & ~off_support, axis=1)


def typical_set(p: Distribution, params: TypicalityParams, budget: Optional[ComputationBudget] = None) -> np.ndarray:
    """Sorted indices of T^n_{p, delta}."""
    return np.flatnonzero(typical_mask(p, params, budget))


def typical_mass(p: Distribution, params: TypicalityParams, budget: Optional[ComputationBudget] = None) -> float:
    """p^n(T^n_{p, delta})."""
    return float(sequence_probabilities(p, params.n, budget)[typical_mask(p, params, budget)].sum())


def joint_counts(
    word: np.ndarray,
    outputs: np.ndarray,
    input_size: int,
    output_size: int,
    budget: Optional[ComputationBudget] = None,
) -> np.ndarray:
    """N(a, b | x^n, y^n) for one input word against every row of `outputs`, shape (rows, |A|, |B|)."""
    word = np.asarray(word, dtype=np.int64)
    shape = (outputs.shape[0], input_size, output_size)
    (budget or ComputationBudget()).allocate("joint type table", shape, np.float64)
    counts = np.zeros(shape, dtype=np.int64)
    for a in range(input_size):
        positions = outputs[:, word == a]
        for b in range(output_size):
            counts[:, a, b] = (positions == b).sum(axis=1)
    return counts


def conditional_typical_mask(
    channel: Channel,
    word: np.ndarray,
    params: TypicalityParams,
    budget: Optional[ComputationBudget] = None,
) -> np.ndarray:
    """Boolean mask over B^n of T^n_{W, delta}(x^n)."""
    word = np.asarray(word, dtype=np.int64)
    if word.shape != (params.n,):
        raise InvalidArgumentError(f"input word must have {params.n} letters, got shape {word.shape}")
    if np.any((word < 0) | (word >= channel.input_size)):
        raise InvalidArgumentError(f"input word has letters outside [0, {channel.input_size})")

    outputs = sequence_letters(channel.output_size, params.n, budget)
    counts = joint_counts(word, outputs, channel.input_size, channel.output_size, budget) / params.n
    input_frequencies = np.bincount(word, minlength=channel.input_size) / params.n
    expected = input_frequencies[:, None] * channel.rows
    close = np.abs(counts - expected[None, :, :]) <= params.delta + TYPICALITY_TOLERANCE
    forbidden = (channel.rows == 0.0)[None, :, :] & (counts > 0.0)
    return np.all(close & ~forbidden, axis=(1, 2))


def conditional_typical_set(
    channel: Channel,
    word: np.ndarray,
    params: TypicalityParams,
    budget: Optional[ComputationBudget] = None,
) -> np.ndarray:
    """Sorted indices of T^n_{W, delta}(x^n)."""
    return np.flatnonzero(conditional_typical_mask(channel, word, params, budget))


@dataclass(frozen=True, slots=True, eq=False)
class TruncatedInput:
    """p^n restricted to T^n_{p, delta} and renormalized."""

    base: Distribution
    params: TypicalityParams
    support: np.ndarray
    mass: np.ndarray
    typical_mass: float

    def __post_init__(self) -> None:
        if self.support.shape != self.mass.shape:
            raise InvalidArgumentError(f"support of shape {self.support.shape} with masses {self.mass.shape}")
        if abs(float(self.mass.sum()) - 1.0) > 1e-12:
            raise InvalidArgumentError(f"truncated masses sum to {float(self.mass.sum())!r}")

    @property
    def letters(self) -> np.ndarray:
        return _letters(self.base.size, self.params.n)[self.support]

    def dense(self) -> np.ndarray:
        """p' as a vector over all of A^n."""
        probs = np.zeros(self.base.size**self.params.n)
        probs[self.support] = self.mass
        return probs

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Sequence indices drawn i.i.d. from p' by inverse-CDF lookup."""
        cdf = np.cumsum(self.mass)
        picks = np.searchsorted(cdf, rng.random(size) * cdf[-1], side="right")
        return self.support[np.minimum(picks, self.support.size - 1)]


def build_truncated_input(
    p: Distribution, params: TypicalityParams, budget: Optional[ComputationBudget] = None
) -> TruncatedInput:
    mask = typical_mask(p, params, budget)
    support = np.flatnonzero(mask)
    if support.size == 0:
        raise InvalidArgumentError(f"T^n_(p, delta) is empty for n={params.n}, delta={params.delta}; increase delta")
    probs = sequence_probabilities(p, params.n, budget)[support]
    total = float(probs.sum())
    support.flags.writeable = False
    mass = probs / total
    mass.flags.writeable = False
    return TruncatedInput(base=p, params=params, support=support, mass=mass, typical_mass=total)
