import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from domain.errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    InvalidDistributionError,
    ResourceBudgetError,
)

PROBABILITY_TOLERANCE = 1e-12
DEFAULT_MAX_OUTCOMES = 2**26
DEFAULT_MAX_BYTES = 2**30


def _frozen_array(values: Any, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != ndim:
        raise InvalidArgumentError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidArgumentError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistributionError(f"{name} contains non-finite values")
    arr.flags.writeable = False
    return arr


def _check_probabilities(values: np.ndarray, name: str) -> None:
    if np.any(values < 0.0):
        raise InvalidDistributionError(f"{name} has negative entries: min={values.min()}")
    total = float(values.sum())
    if abs(total - 1.0) > PROBABILITY_TOLERANCE:
        raise InvalidDistributionError(f"{name} must sum to 1 within {PROBABILITY_TOLERANCE}, got {total!r}")


@dataclass(frozen=True, slots=True, eq=False)
class Distribution:
    """Probability vector over a 0-based integer alphabet."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.probs, 1, "Distribution.probs")
        _check_probabilities(arr, "Distribution.probs")
        object.__setattr__(self, "probs", arr)

    @property
    def size(self) -> int:
        return int(self.probs.shape[0])

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.probs > 0.0)

    @staticmethod
    def uniform(size: int) -> "Distribution":
        if size < 1:
            raise InvalidArgumentError(f"alphabet size must be >= 1, got {size}")
        return Distribution(np.full(size, 1.0 / size))

    @staticmethod
    def point_mass(size: int, symbol: int) -> "Distribution":
        probs = np.zeros(size)
        probs[symbol] = 1.0
        return Distribution(probs)

    def to_list(self) -> list[float]:
        return [float(v) for v in self.probs]


@dataclass(frozen=True, slots=True, eq=False)
class Channel:
    """Row-stochastic matrix: rows indexed by input symbol, columns by output symbol."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.rows, 2, "Channel.rows")
        if np.any(arr < 0.0):
            raise InvalidDistributionError(f"Channel has negative entries: min={arr.min()}")
        sums = arr.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > PROBABILITY_TOLERANCE)
        if bad.size:
            raise InvalidDistributionError(f"Channel row {int(bad[0])} sums to {sums[bad[0]]!r}, expected 1")
        object.__setattr__(self, "rows", arr)

    @property
    def input_size(self) -> int:
        return int(self.rows.shape[0])

    @property
    def output_size(self) -> int:
        return int(self.rows.shape[1])

    def row(self, symbol: int) -> Distribution:
        return Distribution(self.rows[symbol])

    def allclose(self, other: "Channel", atol: float = 1e-9) -> bool:
        return self.rows.shape == other.rows.shape and bool(np.allclose(self.rows, other.rows, rtol=0.0, atol=atol))

    def to_list(self) -> list[list[float]]:
        return [[float(v) for v in r] for r in self.rows]


class Pairing(str, Enum):
    MATCHED = "matched"
    PRODUCT = "product"

    @classmethod
    def from_str(cls, s: str) -> "Pairing":
        value = s.strip().lower()
        if value not in cls._value2member_map_:
            raise InvalidArgumentError(f"pairing must be 'matched' or 'product', got {s!r}")
        return cls(value)


@dataclass(frozen=True, slots=True, eq=False)
class CompoundWiretap:
    """Families {W_t} (legitimate link) and {V_s} (eavesdropper) over one input alphabet."""

    legit: Tuple[Channel, ...]
    eaves: Tuple[Channel, ...]
    pairing: Pairing = Pairing.MATCHED

    def __post_init__(self) -> None:
        object.__setattr__(self, "legit", tuple(self.legit))
        object.__setattr__(self, "eaves", tuple(self.eaves))
        if not self.legit or not self.eaves:
            raise InvalidArgumentError("A compound wiretap channel needs at least one legit and one eaves channel")

        input_size = self.legit[0].input_size
        for family, name in ((self.legit, "legit"), (self.eaves, "eaves")):
            for i, ch in enumerate(family):
                if ch.input_size != input_size:
                    raise DimensionMismatchError(
                        f"{name}[{i}] has input size {ch.input_size}, expected {input_size}", input_size, ch.input_size
                    )
            out = family[0].output_size
            for i, ch in enumerate(family):
                if ch.output_size != out:
                    raise DimensionMismatchError(
                        f"{name}[{i}] has output size {ch.output_size}, expected {out}", out, ch.output_size
                    )

        if self.pairing is Pairing.MATCHED and len(self.legit) != len(self.eaves):
            raise DimensionMismatchError(
                f"Matched pairing needs |legit| == |eaves|, got {len(self.legit)} and {len(self.eaves)}",
                len(self.legit),
                len(self.eaves),
            )

    @property
    def input_size(self) -> int:
        return self.legit[0].input_size

    @property
    def legit_output_size(self) -> int:
        return self.legit[0].output_size

    @property
    def eaves_output_size(self) -> int:
        return self.eaves[0].output_size

    def states(self) -> Tuple[Tuple[int, int], ...]:
        """(t, s) index pairs that may be active."""
        if self.pairing is Pairing.MATCHED:
            return tuple((t, t) for t in range(len(self.legit)))
        return tuple((t, s) for t in range(len(self.legit)) for s in range(len(self.eaves)))

    def pair(self, state: Tuple[int, int]) -> Tuple[Channel, Channel]:
        t, s = state
        return self.legit[t], self.eaves[s]

    def extension(self, n: int, budget: Optional["ComputationBudget"] = None) -> "CompoundWiretap":
        """n-fold memoryless extension of every member, pairing preserved."""
        from domain.channel_algebra import product_extension

        return CompoundWiretap(
            legit=tuple(product_extension(ch, n, budget) for ch in self.legit),
            eaves=tuple(product_extension(ch, n, budget) for ch in self.eaves),
            pairing=self.pairing,
        )

    @staticmethod
    def single(legit: Channel, eaves: Channel) -> "CompoundWiretap":
        return CompoundWiretap(legit=(legit,), eaves=(eaves,), pairing=Pairing.MATCHED)


@dataclass(frozen=True, slots=True, eq=False)
class DegradationWitness:
    """Kernel D with compose(base, D) == target; `residual` is the max-abs mismatch."""

    kernel: Channel
    residual: float


@dataclass(frozen=True, slots=True, eq=False)
class JointDistribution:
    """Joint law over a product alphabet J x Z, rows indexed by the first coordinate."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.probs, 2, "JointDistribution.probs")
        _check_probabilities(arr, "JointDistribution.probs")
        object.__setattr__(self, "probs", arr)

    @property
    def first_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    @property
    def second_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=0)

    def product_of_marginals(self) -> np.ndarray:
        return np.outer(self.first_marginal, self.second_marginal)


@dataclass(frozen=True, slots=True)
class ComputationBudget:
    """
    Upper bounds on the number of outcomes any exhaustive enumeration may touch and on the
    size of any single array built for it.
    """

    max_outcomes: int = DEFAULT_MAX_OUTCOMES
    max_bytes: int = DEFAULT_MAX_BYTES

    def __post_init__(self) -> None:
        if self.max_outcomes < 1:
            raise InvalidArgumentError(f"max_outcomes must be >= 1, got {self.max_outcomes}")
        if self.max_bytes < 1:
            raise InvalidArgumentError(f"max_bytes must be >= 1, got {self.max_bytes}")

    def require(self, what: str, alphabet_size: int, n: int) -> int:
        return self.check(f"{what} ({alphabet_size}^{n})", alphabet_size**n)

    def check(self, what: str, required: int) -> int:
        if required > self.max_outcomes:
            raise ResourceBudgetError(what, required, self.max_outcomes)
        return required

    def allocate(self, what: str, shape: Sequence[int], dtype: Any) -> int:
        """Bytes of an array of `shape` and `dtype`, refused before numpy is asked for them."""
        required = math.prod(int(d) for d in shape) * np.dtype(dtype).itemsize
        if required > self.max_bytes:
            raise ResourceBudgetError(f"{what} {tuple(int(d) for d in shape)}", required, self.max_bytes, "bytes")
        return required


def as_distribution(values: Distribution | Sequence[float] | np.ndarray) -> Distribution:
    return values if isinstance(values, Distribution) else Distribution(np.asarray(values, dtype=np.float64))

