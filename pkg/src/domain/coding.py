"""
Random-coding construction at desk-scale blocklengths: codebook sampling at the three regimes'
rates, the decoder that ignores the randomisation index, exact error, expurgation and leakage.

An encoder is one J x L matrix of codeword indices into A^n. `state_encoders` maps every
active state (t, s) to the encoder used there and `decoder_links` lists the (encoder, t) pairs
whose conditional typical sets make up the decoding sets.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from domain.channel_algebra import extension_row
from domain.errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    RateFloorError,
    RegimeError,
)
from domain.information import entropy_bits, mutual_information
from domain.models import Channel, CompoundWiretap, ComputationBudget, Distribution, Pairing
from domain.random_source import RandomSource, Stream
from domain.typicality import (
    TruncatedInput,
    TypicalityParams,
    build_truncated_input,
    conditional_typical_mask,
    sequence_letters,
)


class CodingRegime(str, Enum):
    CSI = "csi"
    NO_CSI = "no-csi"
    CSI_T = "csi-t"

    @classmethod
    def from_str(cls, s: str) -> "CodingRegime":
        value = s.strip().lower()
        if value not in cls._value2member_map_:
            expected = sorted(cls._value2member_map_)
            raise InvalidArgumentError(f"unknown coding regime {s!r}, expected one of {expected}")
        return cls(value)


StateEncoder = Tuple[int, int, int]
DecoderLink = Tuple[int, int]


def encoder_layout(
    compound: CompoundWiretap, regime: CodingRegime
) -> Tuple[int, Tuple[StateEncoder, ...], Tuple[DecoderLink, ...]]:
    """(encoder count, (t, s, encoder) per active state, (encoder, t) decoder links)."""
    states = compound.states()
    if regime is CodingRegime.CSI:
        return (
            len(states),
            tuple((t, s, e) for e, (t, s) in enumerate(states)),
            tuple((e, t) for e, (t, _) in enumerate(states)),
        )
    if regime is CodingRegime.NO_CSI:
        return 1, tuple((t, s, 0) for t, s in states), tuple((0, t) for t in range(len(compound.legit)))
    if compound.pairing is not Pairing.PRODUCT:
        raise RegimeError("CSI_t coding needs a product-pairing compound")
    return (
        len(compound.legit),
        tuple((t, s, t) for t, s in states),
        tuple((t, t) for t in range(len(compound.legit))),
    )


@dataclass(frozen=True, slots=True)
class RateExponents:
    """Exponents before flooring: J = floor(2^(n message)), L_e = floor(2^(n randomisation[e]))."""

    message: float
    randomisation: Tuple[float, ...]


def rate_exponents(
    compound: CompoundWiretap, regime: CodingRegime, inputs: Sequence[Distribution], tau: float
) -> RateExponents:
    if tau <= 0.0:
        raise InvalidArgumentError(f"tau must be > 0, got {tau}")
    encoders, state_encoders, _ = encoder_layout(compound, regime)
    if len(inputs) != encoders:
        raise DimensionMismatchError(f"{regime.value} coding needs {encoders} input(s), got {len(inputs)}")

    def legit_info(e: int, t: int) -> float:
        return mutual_information(inputs[e], compound.legit[t])

    def eaves_info(e: int, s: int) -> float:
        return mutual_information(inputs[e], compound.eaves[s])

    if regime is CodingRegime.CSI:
        gaps = [legit_info(e, t) - eaves_info(e, s) for t, s, e in state_encoders]
        leaks = [eaves_info(e, s) for _, s, e in state_encoders]
        return RateExponents(min(gaps) - tau, tuple(v + tau / 4.0 for v in leaks))

    eaves_range = range(len(compound.eaves))
    if regime is CodingRegime.NO_CSI:
        leak = max(eaves_info(0, s) for s in eaves_range)
        message = min(legit_info(0, t) for t in range(len(compound.legit))) - leak - tau
        return RateExponents(message, (leak + tau / 4.0,))

    leaks = [max(eaves_info(t, s) for s in eaves_range) for t in range(len(compound.legit))]
    message = min(legit_info(t, t) - leaks[t] for t in range(len(compound.legit))) - tau
    return RateExponents(message, tuple(v + tau / 4.0 for v in leaks))


def _floor_count(n: int, exponent: float) -> int:
    return math.floor(2.0 ** (n * exponent))


@dataclass(frozen=True, slots=True, eq=False)
class Codebook:
    regime: CodingRegime
    n: int
    delta: float
    tau: float
    input_size: int
    words: Tuple[np.ndarray, ...]
    state_encoders: Tuple[StateEncoder, ...]
    decoder_links: Tuple[DecoderLink, ...]
    seed: int
    exponent_scaled: bool = True
    exponents: Optional[RateExponents] = None

    def __post_init__(self) -> None:
        words = tuple(np.array(w, dtype=np.int64) for w in self.words)
        if not words:
            raise InvalidArgumentError("a codebook needs at least one encoder")
        for w in words:
            if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
                raise InvalidArgumentError(f"encoder words must be a non-empty J x L matrix, got shape {w.shape}")
            if w.shape[0] != words[0].shape[0]:
                raise DimensionMismatchError("encoders disagree on the message count", words[0].shape[0], w.shape[0])
            if np.any((w < 0) | (w >= self.input_size**self.n)):
                raise InvalidArgumentError(f"codeword index outside A^n with |A|={self.input_size}, n={self.n}")
            w.flags.writeable = False
        for _, _, e in self.state_encoders:
            if not 0 <= e < len(words):
                raise InvalidArgumentError(f"state refers to encoder {e}, codebook has {len(words)}")
        object.__setattr__(self, "words", words)

    @property
    def params(self) -> TypicalityParams:
        return TypicalityParams(delta=self.delta, n=self.n)

    @property
    def message_count(self) -> int:
        return int(self.words[0].shape[0])

    @property
    def randomisation_counts(self) -> Tuple[int, ...]:
        return tuple(int(w.shape[1]) for w in self.words)

    @property
    def message_rate(self) -> float:
        return math.log2(self.message_count) / self.n

    @property
    def randomisation_rates(self) -> Tuple[float, ...]:
        return tuple(math.log2(count) / self.n for count in self.randomisation_counts)

    def letters(self, encoder: int, budget: Optional[ComputationBudget] = None) -> np.ndarray:
        """Codeword letters of one encoder, shape (J, L, n)."""
        return sequence_letters(self.input_size, self.n, budget)[self.words[encoder]]

    def keep_messages(self, messages: Sequence[int]) -> "Codebook":
        """Sub-codebook of the given messages, relabelled 0..len(messages)-1."""
        index = np.asarray(messages, dtype=np.int64)
        return Codebook(
            regime=self.regime,
            n=self.n,
            delta=self.delta,
            tau=self.tau,
            input_size=self.input_size,
            words=tuple(w[index] for w in self.words),
            state_encoders=self.state_encoders,
            decoder_links=self.decoder_links,
            seed=self.seed,
            exponent_scaled=self.exponent_scaled,
            exponents=self.exponents,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "regime": self.regime.value,
            "n": self.n,
            "delta": self.delta,
            "tau": self.tau,
            "input_size": self.input_size,
            "seed": self.seed,
            "exponent_scaled": self.exponent_scaled,
            "message_exponent": None if self.exponents is None else self.exponents.message,
            "randomisation_exponents": None if self.exponents is None else list(self.exponents.randomisation),
            "state_encoders": [list(entry) for entry in self.state_encoders],
            "decoder_links": [list(link) for link in self.decoder_links],
            "words": [w.tolist() for w in self.words],
        }


def sample_codebook(
    compound: CompoundWiretap,
    regime: CodingRegime,
    inputs: Sequence[Distribution],
    params: TypicalityParams,
    tau: float,
    random_source: RandomSource,
    seed: int = 0,
    override_messages: Optional[int] = None,
    override_randomisation: Optional[int] = None,
    budget: Optional[ComputationBudget] = None,
) -> Codebook:
    """
    Draw every codeword X_(e, j, l) i.i.d. from the encoder's truncated input. Each draw has its
    own counter-based generator, so sub-codebooks with fewer messages or randomisation indices
    reuse exactly the same words.
    """
    budget = budget or ComputationBudget()
    encoders, state_encoders, decoder_links = encoder_layout(compound, regime)
    exponents = rate_exponents(compound, regime, inputs, tau)
    truncated = [build_truncated_input(p, params, budget) for p in inputs]

    messages = _floor_count(params.n, exponents.message)
    randomisation = [_floor_count(params.n, e) for e in exponents.randomisation]
    exponent_scaled = True
    if override_messages is not None:
        if override_messages < 1:
            raise InvalidArgumentError(f"message override must be >= 1, got {override_messages}")
        logger.warning(f"J = {messages} overridden by {override_messages}; counts no longer follow the rate exponents")
        messages, exponent_scaled = override_messages, False
    elif messages < 1:
        raise RateFloorError(exponents.message, params.n)
    if override_randomisation is not None:
        if override_randomisation < 1:
            raise InvalidArgumentError(f"randomisation override must be >= 1, got {override_randomisation}")
        logger.warning(
            f"L = {randomisation} overridden by {override_randomisation}; counts no longer follow the rate exponents"
        )
        randomisation, exponent_scaled = [override_randomisation] * encoders, False
    budget.check("codebook words", messages * sum(randomisation))

    logger.info(f"Sampling {regime.value} codebook: n={params.n}, J={messages}, L={randomisation}")
    words = []
    for e, (trunc, count) in enumerate(zip(truncated, randomisation)):
        block = np.empty((messages, count), dtype=np.int64)
        for j in range(messages):
            for l in range(count):
                block[j, l] = trunc.sample(random_source.generator(Stream.CODEBOOK, e, j, l), 1)[0]
        words.append(block)

    return Codebook(
        regime=regime,
        n=params.n,
        delta=params.delta,
        tau=tau,
        input_size=compound.input_size,
        words=tuple(words),
        state_encoders=state_encoders,
        decoder_links=decoder_links,
        seed=seed,
        exponent_scaled=exponent_scaled,
        exponents=exponents,
    )


def truncated_inputs(
    inputs: Sequence[Distribution], params: TypicalityParams, budget: Optional[ComputationBudget] = None
) -> Tuple[TruncatedInput, ...]:
    return tuple(build_truncated_input(p, params, budget) for p in inputs)


@dataclass(frozen=True, slots=True, eq=False)
class DecoderSets:
    """Decoding sets D_j as boolean masks over B^n, one row per message."""

    masks: np.ndarray

    def __post_init__(self) -> None:
        masks = np.array(self.masks, dtype=bool)
        if masks.ndim != 2:
            raise InvalidArgumentError(f"decoder masks must be J x |B|^n, got shape {masks.shape}")
        overlap = np.flatnonzero(masks.sum(axis=0) > 1)
        if overlap.size:
            raise InvalidArgumentError(f"decoding sets overlap at output sequence {int(overlap[0])}")
        masks.flags.writeable = False
        object.__setattr__(self, "masks", masks)

    @property
    def message_count(self) -> int:
        return int(self.masks.shape[0])

    @property
    def sizes(self) -> np.ndarray:
        return self.masks.sum(axis=1)

    def decode(self, output: int) -> Optional[int]:
        hits = np.flatnonzero(self.masks[:, output])
        return int(hits[0]) if hits.size else None

    def keep(self, messages: Sequence[int]) -> "DecoderSets":
        return DecoderSets(self.masks[np.asarray(messages, dtype=np.int64)])


def _check_family(codebook: Codebook, family: Sequence[Channel], indices: Sequence[int], name: str) -> None:
    needed = max(indices) + 1
    if len(family) < needed:
        raise DimensionMismatchError(f"{name} family has {len(family)} channel(s), codebook needs {needed}")
    for ch in family:
        if ch.input_size != codebook.input_size:
            raise DimensionMismatchError(
                f"{name} channel with {ch.input_size} inputs for a codebook over {codebook.input_size} letters",
                codebook.input_size,
                ch.input_size,
            )


def build_decoder(
    codebook: Codebook,
    legit_family: Sequence[Channel],
    params: Optional[TypicalityParams] = None,
    budget: Optional[ComputationBudget] = None,
) -> DecoderSets:
    """D_j = D'_j minus every other D'_j', with D'_j the union of T_(W_t, delta)(x) over the links' codewords."""
    params = params or codebook.params
    _check_family(codebook, legit_family, [t for _, t in codebook.decoder_links], "legit")
    output_size = legit_family[0].output_size
    budget = budget or ComputationBudget()
    budget.require("decoder output space", output_size, params.n)

    letters = sequence_letters(codebook.input_size, params.n, budget)
    budget.allocate("decoder candidate sets", (codebook.message_count, output_size**params.n), np.bool_)
    cache: Dict[Tuple[int, int], np.ndarray] = {}
    candidates = np.zeros((codebook.message_count, output_size**params.n), dtype=bool)
    for e, t in codebook.decoder_links:
        for j in range(codebook.message_count):
            for word in np.unique(codebook.words[e][j]):
                key = (t, int(word))
                if key not in cache:
                    cache[key] = conditional_typical_mask(legit_family[t], letters[word], params, budget)
                candidates[j] |= cache[key]

    unique = candidates.sum(axis=0) == 1
    return DecoderSets(candidates & unique[None, :])


def conditional_laws(
    channel: Channel, codebook: Codebook, encoder: int, budget: Optional[ComputationBudget] = None
) -> np.ndarray:
    """channel^n(. | x_jl) for every codeword of one encoder, shape (J, L, |out|^n)."""
    budget = budget or ComputationBudget()
    words = codebook.words[encoder]
    budget.allocate("conditional output laws", words.shape + (channel.output_size**codebook.n,), np.float64)
    unique, inverse = np.unique(words, return_inverse=True)
    letters = sequence_letters(codebook.input_size, codebook.n, budget)
    rows = np.stack([extension_row(channel, letters[w]) for w in unique])
    return rows[inverse.reshape(words.shape)]


@dataclass(frozen=True, slots=True, eq=False)
class StateErrors:
    legit_index: int
    eaves_index: int
    per_message: np.ndarray

    @property
    def average(self) -> float:
        return float(self.per_message.mean())

    @property
    def maximum(self) -> float:
        return float(self.per_message.max())


def evaluate_error(
    codebook: Codebook,
    decoder: DecoderSets,
    legit_family: Sequence[Channel],
    budget: Optional[ComputationBudget] = None,
) -> Tuple[StateErrors, ...]:
    """Per active state, (1/L) sum_l W_t^n(D_j^c | x_jl) for every message j."""
    if decoder.message_count != codebook.message_count:
        raise DimensionMismatchError("decoder and codebook sizes differ", codebook.message_count, decoder.message_count)
    _check_family(codebook, legit_family, [t for t, _, _ in codebook.state_encoders], "legit")
    budget = budget or ComputationBudget()

    results = []
    for t, s, e in codebook.state_encoders:
        required = codebook.message_count * codebook.randomisation_counts[e] * legit_family[t].output_size**codebook.n
        budget.check("conditional output laws", required)
        laws = conditional_laws(legit_family[t], codebook, e, budget)
        hit = np.einsum("jlb,jb->jl", laws, decoder.masks.astype(np.float64))
        per_message = np.clip(1.0 - hit, 0.0, 1.0).mean(axis=1)
        results.append(StateErrors(legit_index=t, eaves_index=s, per_message=per_message))
    return tuple(results)


@dataclass(frozen=True, slots=True, eq=False)
class ExpurgationResult:
    """Messages kept after removing every j with error above sqrt(eta) in some state."""

    codebook: Optional[Codebook]
    decoder: Optional[DecoderSets]
    kept: np.ndarray
    eta: float
    removed_fraction: float
    max_error: Optional[float]
    state_count: int

    @property
    def is_empty(self) -> bool:
        return self.kept.size == 0

    @property
    def removal_bound(self) -> float:
        """|B| / J <= T sqrt(eta) whenever eta dominates every average error."""
        return self.state_count * math.sqrt(self.eta)


def expurgate(
    codebook: Codebook,
    decoder: DecoderSets,
    errors: Sequence[StateErrors],
    eta: Optional[float] = None,
) -> ExpurgationResult:
    """With eta omitted, eta is the largest average error (floored at 1e-12)."""
    if eta is None:
        eta = max(1e-12, max(state.average for state in errors))
    if not 0.0 < eta <= 1.0:
        raise InvalidArgumentError(f"eta must lie in (0, 1], got {eta}")

    threshold = math.sqrt(eta)
    good = np.all([state.per_message <= threshold for state in errors], axis=0)
    kept = np.flatnonzero(good)
    removed = 1.0 - kept.size / codebook.message_count
    logger.info(f"Expurgation at sqrt(eta) = {threshold:.3e}: kept {kept.size} of {codebook.message_count}")

    if kept.size == 0:
        logger.warning("Expurgation removed every message")
        return ExpurgationResult(None, None, kept, eta, removed, None, len(errors))
    max_error = max(float(state.per_message[kept].max()) for state in errors)
    return ExpurgationResult(
        codebook=codebook.keep_messages(kept),
        decoder=decoder.keep(kept),
        kept=kept,
        eta=eta,
        removed_fraction=removed,
        max_error=max_error,
        state_count=len(errors),
    )


def message_output_distributions(
    codebook: Codebook, encoder: int, eaves: Channel, budget: Optional[ComputationBudget] = None
) -> np.ndarray:
    """V_hat_j = (1/L) sum_l V^n(. | x_jl) for every message, shape (J, |C|^n)."""
    return conditional_laws(eaves, codebook, encoder, budget).mean(axis=1)


@dataclass(frozen=True, slots=True)
class StateLeakage:
    legit_index: int
    eaves_index: int
    leakage_bits: float
    max_distance: float


def leakage_from_outputs(outputs: np.ndarray) -> Tuple[float, float]:
    """(I(J; Z^n) under uniform J, max_j ||V_hat_j - V_bar||) from the J x |C|^n message output laws."""
    mixture = outputs.mean(axis=0)
    leakage = float(entropy_bits(mixture) - entropy_bits(outputs).mean())
    distance = float(np.abs(outputs - mixture[None, :]).sum(axis=1).max())
    return max(leakage, 0.0), distance


def evaluate_leakage(
    codebook: Codebook,
    eaves_family: Sequence[Channel],
    budget: Optional[ComputationBudget] = None,
) -> Tuple[StateLeakage, ...]:
    _check_family(codebook, eaves_family, [s for _, s, _ in codebook.state_encoders], "eaves")
    budget = budget or ComputationBudget()
    budget.require("eavesdropper output space", eaves_family[0].output_size, codebook.n)

    results = []
    for t, s, e in codebook.state_encoders:
        leakage, distance = leakage_from_outputs(message_output_distributions(codebook, e, eaves_family[s], budget))
        logger.debug(f"state ({t}, {s}): I(J;Z^n) = {leakage:.6e} bits")
        results.append(StateLeakage(legit_index=t, eaves_index=s, leakage_bits=leakage, max_distance=distance))
    return tuple(results)
