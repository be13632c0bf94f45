"""Sampling cross-checks of the exact error and leakage evaluations."""

import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from domain.coding import Codebook, DecoderSets, message_output_distributions
from domain.errors import InvalidArgumentError
from domain.models import Channel, ComputationBudget
from domain.random_source import RandomSource, Stream
from domain.typicality import sequence_letters

DEFAULT_SAMPLES = 100_000


@dataclass(frozen=True, slots=True)
class MonteCarloEstimate:
    mean: float
    std_error: float
    samples: int

    def agrees_with(self, exact: float, sigmas: float = 3.0) -> bool:
        return abs(self.mean - exact) <= sigmas * self.std_error + 1e-12

    def to_dict(self) -> dict[str, Any]:
        return {"mean": self.mean, "std_error": self.std_error, "samples": self.samples}


def transmit(channel: Channel, letters: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Pass every row of an (N, n) letter matrix through the memoryless channel."""
    cdf = np.cumsum(channel.rows, axis=1)
    u = rng.random(letters.shape)
    outputs = (u[..., None] >= cdf[letters]).sum(axis=-1)
    return np.minimum(outputs, channel.output_size - 1)


def _sequence_indices(letters: np.ndarray, size: int) -> np.ndarray:
    powers = size ** np.arange(letters.shape[1] - 1, -1, -1, dtype=np.int64)
    return letters @ powers


def _check_samples(samples: int) -> None:
    if samples < 2:
        raise InvalidArgumentError(f"need at least 2 samples, got {samples}")


def monte_carlo_error(
    codebook: Codebook,
    decoder: DecoderSets,
    legit: Channel,
    state: int,
    random_source: RandomSource,
    samples: int = DEFAULT_SAMPLES,
    budget: Optional[ComputationBudget] = None,
) -> MonteCarloEstimate:
    """Uniform (j, l), transmission over `legit` and a decoder lookup, for the state's encoder."""
    _check_samples(samples)
    _, _, e = codebook.state_encoders[state]
    rng = random_source.generator(Stream.MONTE_CARLO, state, 0)
    words = codebook.words[e]
    j = rng.integers(words.shape[0], size=samples)
    l = rng.integers(words.shape[1], size=samples)
    letters = sequence_letters(codebook.input_size, codebook.n, budget)[words[j, l]]
    received = _sequence_indices(transmit(legit, letters, rng), legit.output_size)

    errors = ~decoder.masks[j, received]
    mean = float(errors.mean())
    return MonteCarloEstimate(mean, math.sqrt(mean * (1.0 - mean) / samples), samples)


def monte_carlo_leakage(
    codebook: Codebook,
    eaves: Channel,
    state: int,
    random_source: RandomSource,
    samples: int = DEFAULT_SAMPLES,
    budget: Optional[ComputationBudget] = None,
) -> MonteCarloEstimate:
    """Sample mean of log2(V_hat_J(Z) / V_bar(Z)) with J uniform and Z ~ V_hat_J, an estimate of I(J; Z^n)."""
    _check_samples(samples)
    _, _, e = codebook.state_encoders[state]
    rng = random_source.generator(Stream.MONTE_CARLO, state, 1)
    outputs = message_output_distributions(codebook, e, eaves, budget)
    mixture = outputs.mean(axis=0)
    words = codebook.words[e]
    j = rng.integers(words.shape[0], size=samples)
    l = rng.integers(words.shape[1], size=samples)
    letters = sequence_letters(codebook.input_size, codebook.n, budget)[words[j, l]]
    received = _sequence_indices(transmit(eaves, letters, rng), eaves.output_size)

    log_ratio = np.log2(outputs[j, received]) - np.log2(mixture[received])
    return MonteCarloEstimate(float(log_ratio.mean()), float(log_ratio.std(ddof=1) / math.sqrt(samples)), samples)
