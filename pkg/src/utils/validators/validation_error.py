from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True, slots=True)
class ValidationError(ValueError):
    message: str
    path: str = "root"
    line: Optional[int] = None
    source: str = "channels"

    def __str__(self) -> str:
        location = f" (line {self.line})" if self.line is not None else ""
        return f"[{self.source}:{self.path}] {self.message}{location}"
