from typing import Optional

from loguru import logger

from domain.attacks import (
    DEFAULT_PARTITIONS,
    AttackReport,
    StateAttack,
    best_decoding_attack,
    identification_attack,
    random_partition_error,
)
from domain.coding import Codebook
from domain.errors import DimensionMismatchError, InvalidArgumentError
from domain.models import CompoundWiretap, ComputationBudget
from domain.random_source import RandomSource
from infrastructure.random.counter_based_rng import CounterBasedRNG


class AdversaryService:
    """Runs the MAP decoding and identification attacks on every active state of a code."""

    def __init__(self, random_source: RandomSource, partitions: int, budget: ComputationBudget) -> None:
        self.random_source = random_source
        self.partitions = partitions
        self.budget = budget

    def attack_state(self, codebook: Codebook, compound: CompoundWiretap, state: int) -> StateAttack:
        if not 0 <= state < len(codebook.state_encoders):
            raise InvalidArgumentError(f"state {state} out of range for {len(codebook.state_encoders)} active state(s)")
        t, s, _ = codebook.state_encoders[state]
        eaves = compound.eaves[s]
        decoding = best_decoding_attack(codebook, eaves, state, self.budget)

        identification = None
        if codebook.message_count >= 2:
            identification = identification_attack(codebook, eaves, state, self.budget)
        else:
            logger.warning("A single message leaves nothing to identify; skipping the identification attack")

        random_min = None
        if self.partitions > 0:
            random_min = float(
                random_partition_error(codebook, eaves, state, self.random_source, self.partitions, self.budget).min()
            )

        logger.debug(f"state ({t}, {s}): MAP error {decoding.average_error:.6f} >= {decoding.bound:.6f}")
        return StateAttack(
            legit_index=t,
            eaves_index=s,
            message_count=codebook.message_count,
            leakage_bits=decoding.leakage_bits,
            best_decoder_avg_error=decoding.average_error,
            decoding_bound=decoding.bound,
            identification_values=None if identification is None else tuple(identification.values.tolist()),
            identification_bound=None if identification is None else identification.bound,
            markov_fraction=None if identification is None else identification.confused_fraction,
            markov_bound=None if identification is None else identification.markov_bound,
            random_partition_min_error=random_min,
        )

    def evaluate(self, codebook: Codebook, compound: CompoundWiretap, state: Optional[int] = None) -> AttackReport:
        """Every active state, or only `state` when given."""
        if codebook.input_size != compound.input_size:
            raise DimensionMismatchError(
                f"codebook over {codebook.input_size} input letters for a compound with {compound.input_size}",
                compound.input_size,
                codebook.input_size,
            )
        if any(s >= len(compound.eaves) for _, s, _ in codebook.state_encoders):
            raise InvalidArgumentError("codebook refers to eavesdropper states the compound does not have")
        logger.info(f"Attacking a {codebook.regime.value} code with J={codebook.message_count} at n={codebook.n}")
        states = range(len(codebook.state_encoders)) if state is None else (state,)
        report = AttackReport(tuple(self.attack_state(codebook, compound, k) for k in states))
        if not report.all_bounds_hold:
            logger.warning("An attack beat its lower bound")
        return report

    @staticmethod
    def create(
        seed: int = 0, partitions: int = DEFAULT_PARTITIONS, budget: ComputationBudget = ComputationBudget()
    ) -> "AdversaryService":
        if partitions < 0:
            raise InvalidArgumentError(f"partitions must be >= 0, got {partitions}")
        return AdversaryService(random_source=CounterBasedRNG(seed), partitions=partitions, budget=budget)
