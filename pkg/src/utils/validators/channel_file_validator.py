import json
import re
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from domain.models import PROBABILITY_TOLERANCE
from utils.validators.validation_error import ValidationError

FAMILIES = ("legit", "eaves")
PAIRINGS = ("matched", "product")


def row_lines(text: str, key: str) -> Dict[Tuple[int, int], int]:
    """
    Line of every row `[...]` inside the matrices of `key`, indexed by (matrix, row).
    The value of `key` is a list of matrices, so rows open at bracket depth 3.
    """
    match = re.search(rf'"{key}"\s*:', text)
    if match is None:
        return {}
    lines: Dict[Tuple[int, int], int] = {}
    depth = matrix = row = 0
    line = text.count("\n", 0, match.end()) + 1
    for char in text[match.end() :]:
        if char == "\n":
            line += 1
        elif char == "[":
            depth += 1
            if depth == 3:
                lines[(matrix, row)] = line
        elif char == "]":
            depth -= 1
            if depth == 2:
                row += 1
            elif depth == 1:
                matrix, row = matrix + 1, 0
            elif depth == 0:
                break
    return lines


class ChannelFileValidator:
    """
    Validate a JSON channel file.
    Expected schema:

    {
      "input_size": int>=1,
      "legit": [ matrix, ... ]   one input_size x |B| row-stochastic matrix per state,
      "eaves":  [ matrix, ... ]  one input_size x |C| row-stochastic matrix per state,
      "pairing": "matched" | "product",
      "description": str (optional)
    }

    Every matrix of a family shares its output alphabet. Rows must be non-negative and
    sum to 1 within 1e-12; offending rows are reported with their line in the file.
    """

    def __init__(self, channels_path: Path) -> None:
        self.channels_path = channels_path
        self.text = ""

    def validate(self) -> Dict[str, Any]:
        """:return: the parsed JSON object once every check passed"""
        p = self.channels_path

        if not isinstance(p, Path):
            raise ValidationError("channels_path must be a pathlib.Path")
        if p.suffix.lower() != ".json":
            raise ValidationError(f"Channel file must be a .json file, got '{p.name}'")
        if not p.exists():
            raise ValidationError(f"Channel file not found: {p}")
        if not p.is_file():
            raise ValidationError(f"Channel path is not a file: {p}")

        self.text = p.read_text(encoding="utf-8")
        try:
            raw = json.loads(self.text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"Invalid JSON: {e.msg} (col {e.colno})", line=e.lineno) from e

        if not isinstance(raw, dict):
            raise ValidationError("Root JSON must be an object/dict")

        input_size = self._req_int(raw, "input_size", min_=1)
        for family in FAMILIES:
            self._validate_family(raw, family, input_size)

        pairing = self._req_key(raw, "pairing")
        if not isinstance(pairing, str) or pairing.strip().lower() not in PAIRINGS:
            raise ValidationError(f"Expected one of {list(PAIRINGS)}", "pairing")
        if pairing.strip().lower() == "matched" and len(raw["legit"]) != len(raw["eaves"]):
            raise ValidationError(
                f"Matched pairing needs as many legit as eaves channels, got {len(raw['legit'])} and "
                f"{len(raw['eaves'])}",
                "pairing",
            )

        description = raw.get("description", "")
        if not isinstance(description, str):
            raise ValidationError("Expected a string", "description")

        extra = set(raw.keys()) - {"input_size", "pairing", "description", *FAMILIES}
        if extra:
            raise ValidationError(f"Unknown root keys: {sorted(extra)}")
        return raw

    def _validate_family(self, raw: dict[str, Any], family: str, input_size: int) -> None:
        matrices = self._req_key(raw, family)
        if not isinstance(matrices, list) or not matrices:
            raise ValidationError("Expected a non-empty list of matrices", family)
        lines = row_lines(self.text, family)

        output_size: Optional[int] = None
        for i, matrix in enumerate(matrices):
            path = f"{family}[{i}]"
            if not isinstance(matrix, list) or len(matrix) != input_size:
                raise ValidationError(f"Expected a list of {input_size} rows (input_size)", path)
            for k, row in enumerate(matrix):
                row_path = f"{path}[{k}]"
                line = lines.get((i, k))
                if not isinstance(row, list) or not row:
                    raise ValidationError("Expected a non-empty list of numbers", row_path, line)
                if any(not isinstance(v, (int, float)) or isinstance(v, bool) for v in row):
                    raise ValidationError("Row entries must be numbers", row_path, line)
                if output_size is None:
                    output_size = len(row)
                elif len(row) != output_size:
                    raise ValidationError(
                        f"Row has {len(row)} outputs, the {family} family uses {output_size}", row_path, line
                    )
                self._check_stochastic(row, row_path, line)

    @staticmethod
    def _check_stochastic(row: list[float], path: str, line: Optional[int]) -> None:
        if min(row) < 0.0:
            raise ValidationError(f"Row has a negative entry ({min(row)})", path, line)
        total = float(sum(row))
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValidationError(f"Row sums to {total!r}, not 1 within {PROBABILITY_TOLERANCE}", path, line)

    @staticmethod
    def _req_key(d: dict[str, Any], key: str) -> Any:
        if key not in d:
            raise ValidationError(f"Missing required key '{key}'", key)
        return d[key]

    def _req_int(self, d: dict[str, Any], key: str, *, min_: Optional[int] = None) -> int:
        v = self._req_key(d, key)
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValidationError("Expected an integer", key)
        if min_ is not None and v < min_:
            raise ValidationError(f"Must be >= {min_}", key)
        return v
