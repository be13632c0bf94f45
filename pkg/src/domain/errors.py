from typing import Optional, Tuple


class DomainError(Exception):
    """Base class for domain-level errors."""


class InvalidArgumentError(DomainError, ValueError):
    pass


class InvalidDistributionError(InvalidArgumentError):
    pass


class DimensionMismatchError(InvalidArgumentError):
    def __init__(self, msg: str, expected: Optional[int] = None, got: Optional[int] = None) -> None:
        super().__init__(msg)
        self.expected = expected
        self.got = got


class PreconditionError(DomainError):
    pass


class DegradationRequiredError(PreconditionError):
    def __init__(self, pair: Tuple[int, int]) -> None:
        t, s = pair
        super().__init__(f"V_{s} is not a degraded version of W_{t} (violating pair (t={t}, s={s}))")
        self.pair = pair


class RegimeError(PreconditionError, InvalidArgumentError):
    """Operation not defined for the compound's pairing."""


class RateFloorError(PreconditionError):
    def __init__(self, exponent: float, n: int) -> None:
        super().__init__(
            f"Message count floors to 0 at n={n} (exponent {exponent:.6f} bits/use); supply an explicit J override"
        )
        self.exponent = exponent
        self.n = n


class ResourceBudgetError(DomainError):
    def __init__(self, what: str, required: int, budget: int, unit: str = "outcomes") -> None:
        super().__init__(f"{what} needs {required} {unit}, budget is {budget}")
        self.required = required
        self.budget = budget
        self.unit = unit
