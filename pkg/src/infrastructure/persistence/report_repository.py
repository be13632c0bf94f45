import csv
import json
import math
from pathlib import Path
from typing import Any, Optional, Sequence

from infrastructure.persistence.configuration_models import ScenarioConfig
from utils.common.versioning import REPORT_SCHEMA_VERSION, library_version

SWEEP_COLUMNS = ("n", "rate", "avg_error", "leakage")


def _finite(value: Any) -> Any:
    """JSON has no infinities: they are written as null."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _finite(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


class ReportRepository:
    """Writes versioned JSON reports and CSV sweeps; no timestamps, so equal runs give equal bytes."""

    def __init__(self, version: Optional[str] = None) -> None:
        self.version = version or library_version()

    def envelope(self, result: dict[str, Any], config: ScenarioConfig) -> dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "library_version": self.version,
            "config": config.to_dict(),
            "result": _finite(result),
        }

    def render(self, result: dict[str, Any], config: ScenarioConfig) -> str:
        return json.dumps(self.envelope(result, config), indent=2) + "\n"

    def save_report(self, path: Path, result: dict[str, Any], config: ScenarioConfig) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(result, config), encoding="utf-8")
        return path

    @staticmethod
    def save_csv(path: Path, rows: Sequence[Sequence[Any]], columns: Sequence[str] = SWEEP_COLUMNS) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
        return path

    @staticmethod
    def load_report(path: Path) -> dict[str, Any]:
        return json.loads(path.read_text(encoding="utf-8"))
