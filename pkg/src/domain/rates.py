from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Tuple, Union

import numpy as np
from tabulate import tabulate

from domain.errors import InvalidArgumentError
from domain.models import Channel, Distribution
from domain.simplex_maximizer import OptimizationMethod

RATE_TOLERANCE = 1e-9


class Regime(str, Enum):
    CSI = "csi"
    CSI_PREFIX = "csi-prefix"
    CSI_T = "csi-t"
    NO_CSI = "no-csi"
    DEGRADED = "degraded"
    MULTILETTER = "multiletter"
    COMPOUND = "compound"

    @classmethod
    def from_str(cls, s: str) -> "Regime":
        value = s.strip().lower()
        if value not in cls._value2member_map_:
            raise InvalidArgumentError(f"unknown regime {s!r}, expected one of {sorted(cls._value2member_map_)}")
        return cls(value)


@dataclass(frozen=True, slots=True, eq=False)
class AuxiliaryChannel:
    """Auxiliary prior over U and the prefix channel U -> A feeding the wiretap channel."""

    prior: Distribution
    prefix: Channel

    def __post_init__(self) -> None:
        if self.prior.size != self.prefix.input_size:
            raise InvalidArgumentError(
                f"prior over {self.prior.size} letters for a prefix with {self.prefix.input_size} inputs"
            )

    @property
    def cardinality(self) -> int:
        return self.prior.size

    def input_distribution(self) -> Distribution:
        return Distribution(self.prior.probs @ self.prefix.rows)

    def to_dict(self) -> dict[str, Any]:
        return {"prior": self.prior.to_list(), "prefix": self.prefix.to_list()}


Optimizer = Union[Distribution, AuxiliaryChannel]


def _optimizer_to_dict(optimizer: Optimizer) -> Any:
    return optimizer.to_dict() if isinstance(optimizer, AuxiliaryChannel) else optimizer.to_list()


@dataclass(frozen=True, slots=True, eq=False)
class StateTerm:
    """Information terms of one (legit, eaves) pair at the optimizer reported for it."""

    legit_index: int
    eaves_index: Optional[int]
    legit_information: float
    eaves_information: float
    argmax: Optimizer

    @property
    def gap(self) -> float:
        return self.legit_information - self.eaves_information

    def to_dict(self) -> dict[str, Any]:
        return {
            "legit_index": self.legit_index,
            "eaves_index": self.eaves_index,
            "legit_information": self.legit_information,
            "eaves_information": self.eaves_information,
            "gap": self.gap,
            "argmax": _optimizer_to_dict(self.argmax),
        }


@dataclass(frozen=True, slots=True, eq=False)
class RateReport:
    regime: Regime
    value: float
    raw_value: float
    argmax_input: Optimizer
    per_state_terms: Tuple[StateTerm, ...]
    method: OptimizationMethod
    is_lower_bound: bool = True
    is_exact: bool = False

    def __post_init__(self) -> None:
        if not self.per_state_terms:
            raise InvalidArgumentError("a rate report needs at least one state term")
        smallest = min(term.gap for term in self.per_state_terms)
        if abs(smallest - self.raw_value) > RATE_TOLERANCE:
            raise InvalidArgumentError(f"raw value {self.raw_value} differs from the smallest state gap {smallest}")
        if self.value < 0.0:
            raise InvalidArgumentError(f"reported rate must be >= 0, got {self.value}")

    @property
    def binding_term(self) -> StateTerm:
        """State achieving the minimum; the smallest index wins ties."""
        gaps = np.array([term.gap for term in self.per_state_terms])
        return self.per_state_terms[int(np.argmin(gaps))]

    def to_dict(self) -> dict[str, Any]:
        return {
            "regime": self.regime.value,
            "value": self.value,
            "raw_value": self.raw_value,
            "method": self.method.value,
            "is_lower_bound": self.is_lower_bound,
            "is_exact": self.is_exact,
            "argmax_input": _optimizer_to_dict(self.argmax_input),
            "binding_state": [self.binding_term.legit_index, self.binding_term.eaves_index],
            "per_state_terms": [term.to_dict() for term in self.per_state_terms],
        }

    def show(self) -> None:
        summary_rows = [
            ("Regime", self.regime.value),
            ("Rate (bits/use)", f"{self.value:.9f}"),
            ("Raw value", f"{self.raw_value:.9f}"),
            ("Method", self.method.value),
            ("Lower bound", "yes" if self.is_lower_bound else "no"),
            ("Exact", "yes" if self.is_exact else "no"),
        ]
        print("\n" + tabulate(summary_rows, tablefmt="rounded_outline"))
        term_rows = [
            (
                t.legit_index,
                "-" if t.eaves_index is None else t.eaves_index,
                t.legit_information,
                t.eaves_information,
                t.gap,
            )
            for t in self.per_state_terms
        ]
        print(tabulate(term_rows, headers=("t", "s", "I legit", "I eaves", "gap"), floatfmt=".9f"))
        print()


@dataclass(frozen=True, slots=True, eq=False)
class MultiletterLadder:
    """a_1, ..., a_N of the n-letter auxiliary optimization; a_n / n lower-bounds the no-CSI capacity."""

    values: Tuple[float, ...]
    aux_cardinalities: Tuple[int, ...]
    optimizers: Tuple[AuxiliaryChannel, ...] = field(default_factory=tuple)

    @property
    def max_n(self) -> int:
        return len(self.values)

    @property
    def rates(self) -> Tuple[float, ...]:
        return tuple(a / (n + 1) for n, a in enumerate(self.values))

    def value(self, n: int) -> float:
        return self.values[n - 1]

    def superadditivity_violations(self, tolerance: float) -> Tuple[Tuple[int, int], ...]:
        """(n, m) pairs with a_{n+m} < a_n + a_m - tolerance."""
        violations = []
        for total in range(2, self.max_n + 1):
            for n in range(1, total // 2 + 1):
                m = total - n
                if self.value(total) < self.value(n) + self.value(m) - tolerance:
                    violations.append((n, m))
        return tuple(violations)

    def to_dict(self) -> dict[str, Any]:
        return {
            "values": list(self.values),
            "rates": list(self.rates),
            "aux_cardinalities": list(self.aux_cardinalities),
        }

    def show(self) -> None:
        rows = [(n + 1, a, r, k) for n, (a, r, k) in enumerate(zip(self.values, self.rates, self.aux_cardinalities))]
        print(tabulate(rows, headers=("n", "a_n", "a_n / n", "|U|"), floatfmt=".9f", tablefmt="rounded_outline"))


@dataclass(frozen=True, slots=True, eq=False)
class SaturatingStructureReport:
    legit_index: Optional[int]
    eaves_index: Optional[int]
    common_value: Optional[float] = None
    csi_value: Optional[float] = None
    no_csi_value: Optional[float] = None

    @property
    def saturating(self) -> bool:
        return self.legit_index is not None and self.eaves_index is not None

    def consistent(self, tolerance: float = 1e-6) -> bool:
        """True when the CSI and no-CSI values both equal the common value."""
        if not self.saturating or self.common_value is None:
            return False
        return all(
            v is not None and abs(v - self.common_value) <= tolerance for v in (self.csi_value, self.no_csi_value)
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "saturating": self.saturating,
            "legit_index": self.legit_index,
            "eaves_index": self.eaves_index,
            "common_value": self.common_value,
            "csi_value": self.csi_value,
            "no_csi_value": self.no_csi_value,
            "consistent": self.consistent(),
        }
