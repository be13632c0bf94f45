import json
from pathlib import Path
from typing import Any

from domain.coding import Codebook, CodingRegime, RateExponents
from domain.errors import DomainError
from utils.common.versioning import CODEBOOK_SCHEMA_VERSION
from utils.validators.validation_error import ValidationError

REQUIRED_KEYS = ("regime", "n", "delta", "tau", "input_size", "seed", "state_encoders", "decoder_links", "words")


class CodebookRepository:
    """JSON persistence of sampled codebooks, so `attack` can reuse what `simulate` drew."""

    @staticmethod
    def save(path: Path, codebook: Codebook) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"schema_version": CODEBOOK_SCHEMA_VERSION, **codebook.to_dict()}
        path.write_text(json.dumps(payload) + "\n", encoding="utf-8")
        return path

    @staticmethod
    def load(path: Path) -> Codebook:
        """:raises ValidationError: unreadable file, wrong schema or an inconsistent codebook"""
        if not path.is_file():
            raise ValidationError(f"Codebook file not found: {path}", source="codebook")
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ValidationError(f"Invalid JSON: {e.msg} (col {e.colno})", line=e.lineno, source="codebook") from e
        if not isinstance(raw, dict):
            raise ValidationError("Root JSON must be an object/dict", source="codebook")
        if raw.get("schema_version") != CODEBOOK_SCHEMA_VERSION:
            raise ValidationError(
                f"Unsupported schema version {raw.get('schema_version')!r}", "schema_version", source="codebook"
            )
        missing = [key for key in REQUIRED_KEYS if key not in raw]
        if missing:
            raise ValidationError(f"Missing required keys {missing}", source="codebook")

        try:
            return CodebookRepository._codebook(raw)
        except (DomainError, TypeError, ValueError) as e:
            raise ValidationError(str(e), source="codebook") from e

    @staticmethod
    def _codebook(raw: dict[str, Any]) -> Codebook:
        exponents = None
        if raw.get("message_exponent") is not None:
            exponents = RateExponents(raw["message_exponent"], tuple(raw["randomisation_exponents"]))
        return Codebook(
            regime=CodingRegime.from_str(raw["regime"]),
            n=int(raw["n"]),
            delta=float(raw["delta"]),
            tau=float(raw["tau"]),
            input_size=int(raw["input_size"]),
            words=tuple(raw["words"]),
            state_encoders=tuple(tuple(entry) for entry in raw["state_encoders"]),
            decoder_links=tuple(tuple(link) for link in raw["decoder_links"]),
            seed=int(raw["seed"]),
            exponent_scaled=bool(raw.get("exponent_scaled", True)),
            exponents=exponents,
        )
