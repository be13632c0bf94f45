from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from tabulate import tabulate


@dataclass(frozen=True, slots=True)
class ScenarioCheck:
    """One asserted inequality of a worked example: `value` compared against `threshold`."""

    name: str
    value: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "value": self.value, "threshold": self.threshold, "passed": self.passed}


@dataclass(frozen=True, slots=True)
class ExampleReport:
    name: str
    parameters: Dict[str, Any]
    quantities: Dict[str, Any]
    checks: Tuple[ScenarioCheck, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> Tuple[ScenarioCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def to_dict(self) -> dict[str, Any]:
        return {
            "example": self.name,
            "parameters": self.parameters,
            "quantities": self.quantities,
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }

    def show(self) -> None:
        scalars = [(key, value) for key, value in self.quantities.items() if isinstance(value, (int, float))]
        print("\n" + tabulate(scalars, headers=(self.name, "value"), floatfmt=".9f", tablefmt="rounded_outline"))
        rows = [(c.name, c.value, c.threshold, "ok" if c.passed else "FAILED") for c in self.checks]
        print(tabulate(rows, headers=("check", "value", "threshold", ""), floatfmt=".6g"))
        print()
