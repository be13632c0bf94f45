import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from domain.coding import CodingRegime, RateExponents
from infrastructure.persistence.codebook_repository import CodebookRepository
from infrastructure.persistence.configuration_models import ScenarioConfig
from infrastructure.persistence.report_repository import SWEEP_COLUMNS, ReportRepository
from tests.helpers import manual_codebook
from utils.common.versioning import CODEBOOK_SCHEMA_VERSION, REPORT_SCHEMA_VERSION
from utils.validators.validation_error import ValidationError


def config(**changes):
    return ScenarioConfig(command="capacity", channels_path=Path("channels/bsc_pair.json"), regime="csi", **changes)


def test_report_envelope_is_versioned_and_finite(tmp_path):
    path = ReportRepository(version="9.9.9").save_report(tmp_path / "r.json", {"rate": math.inf, "x": [1.0]}, config())
    report = ReportRepository.load_report(path)
    assert report["schema_version"] == REPORT_SCHEMA_VERSION
    assert report["library_version"] == "9.9.9"
    assert report["config"]["channels_path"] == str(Path("channels/bsc_pair.json"))
    assert report["result"] == {"rate": None, "x": [1.0]}


def test_identical_results_render_identically():
    repository = ReportRepository(version="1.0")
    assert repository.render({"a": 0.1}, config()) == repository.render({"a": 0.1}, config())


def test_csv_rows_keep_full_precision(tmp_path):
    path = ReportRepository.save_csv(tmp_path / "sweep.csv", [(4, 0.1 + 0.2, 0.0, 1e-17)])
    with path.open(encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == list(SWEEP_COLUMNS)
    assert rows[1] == ["4", repr(0.1 + 0.2), "0.0", "1e-17"]


def test_codebook_roundtrip(tmp_path):
    codebook = manual_codebook([[0, 1], [3, 2]], n=2)
    path = CodebookRepository.save(tmp_path / "code.json", codebook)
    loaded = CodebookRepository.load(path)
    assert np.array_equal(loaded.words[0], codebook.words[0])
    assert loaded.regime is CodingRegime.CSI
    assert loaded.state_encoders == ((0, 0, 0),)
    assert loaded.exponent_scaled is False
    assert loaded.exponents is None


def test_codebook_exponents_survive(tmp_path):
    codebook = manual_codebook([[0], [3]], n=2)
    object.__setattr__(codebook, "exponents", RateExponents(0.2, (0.4,)))
    loaded = CodebookRepository.load(CodebookRepository.save(tmp_path / "code.json", codebook))
    assert loaded.exponents == RateExponents(0.2, (0.4,))


@pytest.mark.parametrize(
    "payload, match",
    [
        ("{", "Invalid JSON"),
        ("[]", "object"),
        (json.dumps({"schema_version": 99}), "schema version"),
        (json.dumps({"schema_version": CODEBOOK_SCHEMA_VERSION, "n": 2}), "Missing required keys"),
    ],
)
def test_broken_codebook_files(tmp_path, payload, match):
    path = tmp_path / "code.json"
    path.write_text(payload, encoding="utf-8")
    with pytest.raises(ValidationError, match=match):
        CodebookRepository.load(path)


def test_inconsistent_codebook_is_a_validation_error(tmp_path):
    path = CodebookRepository.save(tmp_path / "code.json", manual_codebook([[0], [3]], n=2))
    raw = json.loads(path.read_text(encoding="utf-8"))
    raw["words"] = [[[0], [7]]]
    path.write_text(json.dumps(raw), encoding="utf-8")
    with pytest.raises(ValidationError) as excinfo:
        CodebookRepository.load(path)
    assert excinfo.value.source == "codebook"
    with pytest.raises(ValidationError, match="not found"):
        CodebookRepository.load(tmp_path / "absent.json")


def test_configuration_requirements():
    with pytest.raises(ValueError):
        ScenarioConfig(command="simulate", channels_path=Path("c.json"), regime="csi")
    with pytest.raises(ValueError):
        ScenarioConfig(command="attack", channels_path=Path("c.json"))
    with pytest.raises(ValueError):
        ScenarioConfig(command="launch")
    with pytest.raises(ValueError):
        config(tau=0.0)
    assert ScenarioConfig(command="example1").to_dict()["overrides"] == {}
    assert config(n=[2, 3]).n == (2, 3)


def test_configuration_budgets_and_auxiliary_size():
    with pytest.raises(ValueError):
        ScenarioConfig(command="example1", max_bytes=0)
    with pytest.raises(ValueError):
        ScenarioConfig(command="example1", aux_cardinality=0)
    assert ScenarioConfig(command="example1", max_bytes=4096).to_dict()["max_bytes"] == 4096
