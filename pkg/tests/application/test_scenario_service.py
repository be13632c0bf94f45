import json
from pathlib import Path

import pytest

from application.scenario_service import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    ScenarioService,
    exit_code,
    run_scenario,
)
from domain.errors import DegradationRequiredError, InvalidArgumentError, ResourceBudgetError
from infrastructure.persistence.configuration_models import ScenarioConfig
from utils.validators.validation_error import ValidationError

CHANNELS = Path(__file__).resolve().parents[2] / "channels"


@pytest.mark.parametrize(
    "error, code",
    [
        (ResourceBudgetError("typical set", 2**30, 2**26), EXIT_RESOURCE),
        (DegradationRequiredError((0, 0)), EXIT_USAGE),
        (InvalidArgumentError("bad"), EXIT_USAGE),
        (FileNotFoundError("missing.json"), EXIT_USAGE),
        (RuntimeError("boom"), EXIT_FAILURE),
    ],
)
def test_exit_codes(error, code):
    assert exit_code(error) == code


def test_validation_errors_are_usage_errors():
    assert exit_code(ValidationError("broken", source="codebook")) == EXIT_USAGE


def test_capacity_report_is_written(tmp_path):
    out = tmp_path / "capacity.json"
    config = ScenarioConfig(
        command="capacity", channels_path=CHANNELS / "bsc_pair.json", regime="csi", restarts=2, out_path=out
    )
    assert run_scenario(config, show=False) == EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["config"]["regime"] == "csi"
    assert report["result"]["value"] > 0.0


def test_degraded_regime_needs_degraded_channels():
    config = ScenarioConfig(command="capacity", channels_path=CHANNELS / "not_degraded.json", regime="degraded")
    assert run_scenario(config, show=False) == EXIT_USAGE


def test_oversized_simulation_is_refused():
    config = ScenarioConfig(command="simulate", channels_path=CHANNELS / "bsc_pair.json", regime="csi", n=(30,))
    assert run_scenario(config, show=False) == EXIT_RESOURCE


def test_simulation_artifacts_feed_the_attack(tmp_path):
    codebook = tmp_path / "codebook.json"
    sweep = tmp_path / "sweep.csv"
    simulate = ScenarioConfig(
        command="simulate",
        channels_path=CHANNELS / "bsc_pair.json",
        regime="csi",
        n=(4, 6),
        override_messages=2,
        override_randomisation=4,
        csv_path=sweep,
        codebook_out_path=codebook,
    )
    outcome = ScenarioService.create(simulate).run()
    assert [run["n"] for run in outcome.result["runs"]] == [4, 6]
    assert outcome.artifacts == [str(sweep), str(codebook)]
    lines = sweep.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,rate,avg_error,leakage"
    assert len(lines) == 3

    attack = ScenarioConfig(
        command="attack", channels_path=CHANNELS / "bsc_pair.json", codebook_path=codebook, partitions=5
    )
    result = ScenarioService.create(attack).run().result
    assert result["all_bounds_hold"]
    assert result["states"][0]["message_count"] == 2


def test_failed_example_check_exits_with_failure():
    config = ScenarioConfig(command="example1", grid=100, overrides={"tau": 0.0})
    assert run_scenario(config, show=False) == EXIT_FAILURE


def test_example2_lengths_come_back_as_a_tuple():
    config = ScenarioConfig(
        command="example2",
        grid=100,
        overrides={"grid_points": 3, "lengths": [1], "multiletter": False},
    )
    outcome = ScenarioService.create(config).run()
    assert outcome.passed
    assert outcome.result["parameters"]["lengths"] == (1,)
