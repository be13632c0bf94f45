"""
Optimal eavesdropper strategies against a sampled code: the maximum-a-posteriori message decoder
and the per-message identification tests, each set against its Pinsker-derived lower bound.
"""

import math
from dataclasses import dataclass
from typing import Any, Optional, Tuple

import numpy as np
from tabulate import tabulate

from domain.coding import Codebook, leakage_from_outputs, message_output_distributions
from domain.errors import InvalidArgumentError
from domain.information import PINSKER_CONSTANT
from domain.models import Channel, ComputationBudget
from domain.random_source import RandomSource, Stream

BOUND_TOLERANCE = 1e-10
DEFAULT_PARTITIONS = 100


def _outputs(
    codebook: Codebook, eaves: Channel, state: int, budget: Optional[ComputationBudget]
) -> Tuple[np.ndarray, float]:
    if not 0 <= state < len(codebook.state_encoders):
        raise InvalidArgumentError(f"state {state} out of range for {len(codebook.state_encoders)} active state(s)")
    (budget or ComputationBudget()).require("eavesdropper output space", eaves.output_size, codebook.n)
    _, _, e = codebook.state_encoders[state]
    outputs = message_output_distributions(codebook, e, eaves, budget)
    leakage, _ = leakage_from_outputs(outputs)
    return outputs, leakage


@dataclass(frozen=True, slots=True, eq=False)
class DecodingAttack:
    """MAP partition {K_j} for uniform J: z goes to the likeliest message, the smaller index on ties."""

    partition: np.ndarray
    average_error: float
    bound: float
    leakage_bits: float

    def __post_init__(self) -> None:
        if not -BOUND_TOLERANCE <= self.average_error <= 1.0 + BOUND_TOLERANCE:
            raise InvalidArgumentError(f"average error must lie in [0, 1], got {self.average_error}")

    @property
    def bound_holds(self) -> bool:
        return self.average_error >= self.bound - BOUND_TOLERANCE


def map_error(outputs: np.ndarray, partition: np.ndarray) -> float:
    """1 - (1/J) sum_z V_hat_(partition(z))(z) for a deterministic partition of the output space."""
    hit = outputs[partition, np.arange(outputs.shape[1])].sum()
    return float(min(1.0, max(0.0, 1.0 - hit / outputs.shape[0])))


def decoding_bound(message_count: int, leakage_bits: float) -> float:
    return 1.0 - 1.0 / message_count - PINSKER_CONSTANT * math.sqrt(leakage_bits)


def best_decoding_attack(
    codebook: Codebook, eaves: Channel, state: int, budget: Optional[ComputationBudget] = None
) -> DecodingAttack:
    outputs, leakage = _outputs(codebook, eaves, state, budget)
    partition = np.argmax(outputs, axis=0)
    return DecodingAttack(
        partition=partition,
        average_error=map_error(outputs, partition),
        bound=decoding_bound(codebook.message_count, leakage),
        leakage_bits=leakage,
    )


def random_partition_error(
    codebook: Codebook,
    eaves: Channel,
    state: int,
    random_source: RandomSource,
    trials: int = DEFAULT_PARTITIONS,
    budget: Optional[ComputationBudget] = None,
) -> np.ndarray:
    """Average error of `trials` uniformly random output partitions; none beats the MAP partition."""
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    outputs, _ = _outputs(codebook, eaves, state, budget)
    errors = np.empty(trials)
    for trial in range(trials):
        rng = random_source.generator(Stream.PARTITION, state, trial)
        errors[trial] = map_error(outputs, rng.integers(outputs.shape[0], size=outputs.shape[1]))
    return errors


@dataclass(frozen=True, slots=True, eq=False)
class IdentificationAttack:
    """
    g(j) = V_hat_j(K_j^c) + M_-j(K_j) for the likelihood-ratio test K_j = {V_hat_j > M_-j},
    where M_-j is the uniform mixture of the other messages' output laws.
    """

    values: np.ndarray
    bound: float
    leakage_bits: float

    def __post_init__(self) -> None:
        if np.any(self.values < -BOUND_TOLERANCE) or np.any(self.values > 2.0 + BOUND_TOLERANCE):
            raise InvalidArgumentError("identification values must lie in [0, 2]")

    @property
    def average(self) -> float:
        return float(self.values.mean())

    @property
    def bound_holds(self) -> bool:
        return self.average >= self.bound - BOUND_TOLERANCE

    @property
    def slack(self) -> float:
        """Measured eta with (1/J) sum_j g(j) = 1 - eta."""
        return 1.0 - self.average

    @property
    def confused_fraction(self) -> float:
        """Fraction of messages whose test errs with total probability below 1/2."""
        return float((self.values < 0.5).mean())

    @property
    def markov_bound(self) -> float:
        return 2.0 / 3.0 * (1.0 + self.slack)


def identification_bound(message_count: int, leakage_bits: float) -> float:
    return 1.0 - PINSKER_CONSTANT * math.sqrt(leakage_bits) * (2 * message_count - 1) / (message_count - 1)


def identification_attack(
    codebook: Codebook, eaves: Channel, state: int, budget: Optional[ComputationBudget] = None
) -> IdentificationAttack:
    count = codebook.message_count
    if count < 2:
        raise InvalidArgumentError(f"identification needs at least 2 messages, got {count}")
    outputs, leakage = _outputs(codebook, eaves, state, budget)
    others = (outputs.sum(axis=0)[None, :] - outputs) / (count - 1)
    # the test K_j = {V_hat_j > M_-j} attains 1 - TV(V_hat_j, M_-j)
    values = 1.0 - np.clip(outputs - others, 0.0, None).sum(axis=1)
    return IdentificationAttack(
        values=np.clip(values, 0.0, 2.0), bound=identification_bound(count, leakage), leakage_bits=leakage
    )


@dataclass(frozen=True, slots=True)
class StateAttack:
    legit_index: int
    eaves_index: int
    message_count: int
    leakage_bits: float
    best_decoder_avg_error: float
    decoding_bound: float
    identification_values: Optional[Tuple[float, ...]]
    identification_bound: Optional[float]
    markov_fraction: Optional[float]
    markov_bound: Optional[float]
    random_partition_min_error: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.best_decoder_avg_error <= 1.0:
            raise InvalidArgumentError(f"best decoder error must lie in [0, 1], got {self.best_decoder_avg_error}")
        if self.identification_values is not None and not 0.0 <= self.identification_avg <= 2.0:
            raise InvalidArgumentError(f"identification average must lie in [0, 2], got {self.identification_avg}")

    @property
    def identification_avg(self) -> Optional[float]:
        if self.identification_values is None:
            return None
        return sum(self.identification_values) / len(self.identification_values)

    @property
    def decoding_bound_holds(self) -> bool:
        return self.best_decoder_avg_error >= self.decoding_bound - BOUND_TOLERANCE

    @property
    def identification_bound_holds(self) -> bool:
        if self.identification_bound is None:
            return True
        return self.identification_avg >= self.identification_bound - BOUND_TOLERANCE

    @property
    def markov_holds(self) -> bool:
        return self.markov_fraction is None or self.markov_fraction <= self.markov_bound + BOUND_TOLERANCE

    @property
    def map_beats_random(self) -> bool:
        if self.random_partition_min_error is None:
            return True
        return self.best_decoder_avg_error <= self.random_partition_min_error + BOUND_TOLERANCE

    def to_dict(self) -> dict[str, Any]:
        return {
            "legit_index": self.legit_index,
            "eaves_index": self.eaves_index,
            "message_count": self.message_count,
            "epsilon_used": self.leakage_bits,
            "best_decoder_avg_error": self.best_decoder_avg_error,
            "paper_lower_bound": self.decoding_bound,
            "decoding_bound_holds": self.decoding_bound_holds,
            "identification_values": None if self.identification_values is None else list(self.identification_values),
            "identification_avg": self.identification_avg,
            "identification_bound": self.identification_bound,
            "identification_bound_holds": self.identification_bound_holds,
            "markov_fraction": self.markov_fraction,
            "markov_bound": self.markov_bound,
            "random_partition_min_error": self.random_partition_min_error,
        }


@dataclass(frozen=True, slots=True)
class AttackReport:
    states: Tuple[StateAttack, ...]

    @property
    def all_bounds_hold(self) -> bool:
        return all(
            s.decoding_bound_holds and s.identification_bound_holds and s.markov_holds and s.map_beats_random
            for s in self.states
        )

    def to_dict(self) -> dict[str, Any]:
        return {"all_bounds_hold": self.all_bounds_hold, "states": [state.to_dict() for state in self.states]}

    def show(self) -> None:
        rows = [
            (
                s.legit_index,
                s.eaves_index,
                s.leakage_bits,
                s.best_decoder_avg_error,
                s.decoding_bound,
                "-" if s.identification_avg is None else s.identification_avg,
                "-" if s.identification_bound is None else s.identification_bound,
                "-" if s.markov_fraction is None else s.markov_fraction,
            )
            for s in self.states
        ]
        headers = ("t", "s", "I(J;Z^n)", "MAP error", "error bound", "mean g", "g bound", "g < 1/2")
        print("\n" + tabulate(rows, headers=headers, floatfmt=".6f", tablefmt="rounded_outline"))
        print(f"All bounds hold: {'yes' if self.all_bounds_hold else 'NO'}\n")
