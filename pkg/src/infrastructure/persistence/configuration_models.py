from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Tuple

from domain.errors import InvalidArgumentError
from domain.models import DEFAULT_MAX_BYTES, DEFAULT_MAX_OUTCOMES

COMMANDS = ("capacity", "simulate", "attack", "example1", "example2")


def _path(value: Optional[Path]) -> Optional[str]:
    return None if value is None else str(value)


@dataclass(frozen=True, slots=True)
class ScenarioConfig:
    """Every parameter of one command-line run; embedded verbatim in the report it produces."""

    command: str
    channels_path: Optional[Path] = None
    regime: Optional[str] = None
    n: Tuple[int, ...] = ()
    delta: Optional[float] = None
    tau: float = 0.1
    grid: int = 1000
    restarts: int = 32
    aux_cardinality: Optional[int] = None
    seed: int = 0
    max_outcomes: int = DEFAULT_MAX_OUTCOMES
    max_bytes: int = DEFAULT_MAX_BYTES
    override_messages: Optional[int] = None
    override_randomisation: Optional[int] = None
    eta: Optional[float] = None
    inputs: str = "uniform"
    state: Optional[int] = None
    partitions: int = 100
    codebook_path: Optional[Path] = None
    out_path: Optional[Path] = None
    csv_path: Optional[Path] = None
    codebook_out_path: Optional[Path] = None
    overrides: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidArgumentError(f"unknown command {self.command!r}, expected one of {list(COMMANDS)}")
        object.__setattr__(self, "n", tuple(self.n))
        if any(n < 1 for n in self.n):
            raise InvalidArgumentError(f"blocklengths must be >= 1, got {list(self.n)}")
        if self.delta is not None and self.delta <= 0.0:
            raise InvalidArgumentError(f"delta must be > 0, got {self.delta}")
        if self.tau <= 0.0:
            raise InvalidArgumentError(f"tau must be > 0, got {self.tau}")
        if self.grid < 1:
            raise InvalidArgumentError(f"grid must be >= 1, got {self.grid}")
        if self.restarts < 0:
            raise InvalidArgumentError(f"restarts must be >= 0, got {self.restarts}")
        if self.aux_cardinality is not None and self.aux_cardinality < 1:
            raise InvalidArgumentError(f"aux cardinality must be >= 1, got {self.aux_cardinality}")
        if self.seed < 0:
            raise InvalidArgumentError(f"seed must be >= 0, got {self.seed}")
        if self.max_outcomes < 1:
            raise InvalidArgumentError(f"max outcomes must be >= 1, got {self.max_outcomes}")
        if self.max_bytes < 1:
            raise InvalidArgumentError(f"max bytes must be >= 1, got {self.max_bytes}")
        if self.eta is not None and not 0.0 < self.eta <= 1.0:
            raise InvalidArgumentError(f"eta must lie in (0, 1], got {self.eta}")
        if self.state is not None and self.state < 0:
            raise InvalidArgumentError(f"state must be >= 0, got {self.state}")
        if self.partitions < 0:
            raise InvalidArgumentError(f"partitions must be >= 0, got {self.partitions}")
        if self.command in ("capacity", "simulate", "attack") and self.channels_path is None:
            raise InvalidArgumentError(f"{self.command} needs a channel file")
        if self.command in ("capacity", "simulate") and self.regime is None:
            raise InvalidArgumentError(f"{self.command} needs a regime")
        if self.command == "simulate" and not self.n:
            raise InvalidArgumentError("simulate needs at least one blocklength")
        if self.command == "attack" and self.codebook_path is None:
            raise InvalidArgumentError("attack needs a codebook file")

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "channels_path": _path(self.channels_path),
            "regime": self.regime,
            "n": list(self.n),
            "delta": self.delta,
            "tau": self.tau,
            "grid": self.grid,
            "restarts": self.restarts,
            "aux_cardinality": self.aux_cardinality,
            "seed": self.seed,
            "max_outcomes": self.max_outcomes,
            "max_bytes": self.max_bytes,
            "override_messages": self.override_messages,
            "override_randomisation": self.override_randomisation,
            "eta": self.eta,
            "inputs": self.inputs,
            "state": self.state,
            "partitions": self.partitions,
            "codebook_path": _path(self.codebook_path),
            "out_path": _path(self.out_path),
            "csv_path": _path(self.csv_path),
            "codebook_out_path": _path(self.codebook_out_path),
            "overrides": dict(self.overrides),
        }
