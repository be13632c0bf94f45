from dataclasses import dataclass
from typing import Any, Optional, Tuple

from tabulate import tabulate

from domain.coding import CodingRegime
from domain.errors import InvalidArgumentError


@dataclass(frozen=True, slots=True)
class StateCodingSummary:
    legit_index: int
    eaves_index: int
    encoder: int
    average_error: float
    max_error: float
    expurgated_max_error: Optional[float]
    leakage_bits: float
    max_output_distance: float
    theta_mass: float
    events_held: int
    chain_distance: float
    chernoff_bound: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("average_error", "max_error"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidArgumentError(f"{name} must lie in [0, 1], got {value}")
        if self.leakage_bits < 0.0:
            raise InvalidArgumentError(f"leakage must be >= 0, got {self.leakage_bits}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "legit_index": self.legit_index,
            "eaves_index": self.eaves_index,
            "encoder": self.encoder,
            "average_error": self.average_error,
            "max_error": self.max_error,
            "expurgated_max_error": self.expurgated_max_error,
            "leakage_bits": self.leakage_bits,
            "max_output_distance": self.max_output_distance,
            "theta_mass": self.theta_mass,
            "events_held": self.events_held,
            "chain_distance": self.chain_distance,
            "chernoff_bound": self.chernoff_bound,
        }


@dataclass(frozen=True, slots=True)
class CodingReport:
    regime: CodingRegime
    n: int
    delta: float
    tau: float
    epsilon: float
    seed: int
    message_count: int
    randomisation_counts: Tuple[int, ...]
    message_rate: float
    randomisation_rates: Tuple[float, ...]
    exponent_scaled: bool
    states: Tuple[StateCodingSummary, ...]
    eta: float
    removed_fraction: float
    kept_messages: int

    @property
    def empty_code(self) -> bool:
        return self.kept_messages == 0

    @property
    def worst_average_error(self) -> float:
        return max(state.average_error for state in self.states)

    @property
    def worst_leakage(self) -> float:
        return max(state.leakage_bits for state in self.states)

    def sweep_row(self) -> Tuple[int, float, float, float]:
        """(n, message rate, worst average error, worst leakage) for CSV sweeps."""
        return self.n, self.message_rate, self.worst_average_error, self.worst_leakage

    def to_dict(self) -> dict[str, Any]:
        return {
            "regime": self.regime.value,
            "n": self.n,
            "delta": self.delta,
            "tau": self.tau,
            "epsilon": self.epsilon,
            "seed": self.seed,
            "message_count": self.message_count,
            "randomisation_counts": list(self.randomisation_counts),
            "message_rate": self.message_rate,
            "randomisation_rates": list(self.randomisation_rates),
            "exponent_scaled": self.exponent_scaled,
            "expurgation": {
                "eta": self.eta,
                "removed_fraction": self.removed_fraction,
                "kept_messages": self.kept_messages,
                "empty_code": self.empty_code,
            },
            "states": [state.to_dict() for state in self.states],
        }

    def show(self) -> None:
        summary = [
            ("Regime", self.regime.value),
            ("Blocklength n", self.n),
            ("delta / tau / epsilon", f"{self.delta:.4g} / {self.tau:.4g} / {self.epsilon:.4g}"),
            ("J", self.message_count),
            ("L", ", ".join(str(count) for count in self.randomisation_counts)),
            ("Message rate", f"{self.message_rate:.6f}"),
            ("Counts from exponents", "yes" if self.exponent_scaled else "no"),
            ("Kept after expurgation", f"{self.kept_messages} (removed {self.removed_fraction:.2%})"),
        ]
        print("\n" + tabulate(summary, tablefmt="rounded_outline"))
        rows = [
            (
                s.legit_index,
                s.eaves_index,
                s.average_error,
                s.max_error,
                "-" if s.expurgated_max_error is None else s.expurgated_max_error,
                s.leakage_bits,
                s.theta_mass,
                s.events_held,
            )
            for s in self.states
        ]
        headers = ("t", "s", "avg error", "max error", "max after exp.", "I(J;Z^n)", "Theta mass", "events held")
        print(tabulate(rows, headers=headers, floatfmt=".6f"))
        print()
