import json
from pathlib import Path

import pytest

from domain.channel_algebra import bsc
from domain.models import CompoundWiretap, Pairing
from infrastructure.persistence.channel_file_reader import ChannelFileReader, write_channel_file
from utils.validators.channel_file_validator import row_lines
from utils.validators.validation_error import ValidationError

CHANNELS = Path(__file__).resolve().parents[2] / "channels"

BAD_ROW = """{
  "input_size": 2,
  "legit": [
    [
      [0.9, 0.1],
      [0.1, 0.9]
    ]
  ],
  "eaves": [
    [
      [0.7, 0.3],
      [0.3, 0.6]
    ]
  ],
  "pairing": "matched"
}
"""


def write(tmp_path, payload, name="channels.json"):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return path


def valid_payload(**changes):
    payload = {
        "input_size": 2,
        "legit": [[[0.9, 0.1], [0.1, 0.9]]],
        "eaves": [[[0.7, 0.3], [0.3, 0.7]]],
        "pairing": "matched",
    }
    payload.update(changes)
    return payload


def test_written_file_reads_back(tmp_path):
    compound = CompoundWiretap((bsc(0.05), bsc(0.1)), (bsc(0.3),), Pairing.PRODUCT)
    path = write_channel_file(tmp_path / "out" / "pair.json", compound, "two legit, one eaves")
    channel_file = ChannelFileReader(path).read()
    assert channel_file.description == "two legit, one eaves"
    assert channel_file.compound.pairing is Pairing.PRODUCT
    assert channel_file.compound.states() == ((0, 0), (1, 0))
    assert channel_file.compound.legit[1].allclose(bsc(0.1), atol=0.0)


def test_sample_channel_files_are_valid():
    for name in ("bsc_pair", "example1", "product_degraded", "not_degraded"):
        assert ChannelFileReader(CHANNELS / f"{name}.json").read().compound.states()


def test_row_sum_error_carries_its_line(tmp_path):
    with pytest.raises(ValidationError) as excinfo:
        ChannelFileReader(write(tmp_path, BAD_ROW))
    assert excinfo.value.path == "eaves[0][1]"
    assert excinfo.value.line == 12
    assert "(line 12)" in str(excinfo.value)


def test_row_lines_follow_bracket_depth():
    assert row_lines(BAD_ROW, "legit") == {(0, 0): 5, (0, 1): 6}
    assert row_lines(BAD_ROW, "missing") == {}


@pytest.mark.parametrize(
    "changes, path",
    [
        ({"input_size": 0}, "input_size"),
        ({"legit": []}, "legit"),
        ({"legit": [[[0.9, 0.1]]]}, "legit[0]"),
        ({"eaves": [[[0.7, 0.3], [0.3, 0.7]], [[0.5, 0.25, 0.25], [0.5, 0.25, 0.25]]]}, "eaves[1][0]"),
        ({"eaves": [[[1.2, -0.2], [0.3, 0.7]]]}, "eaves[0][0]"),
        ({"pairing": "crossed"}, "pairing"),
        ({"eaves": [[[0.7, 0.3], [0.3, 0.7]], [[0.6, 0.4], [0.4, 0.6]]]}, "pairing"),
        ({"description": 3}, "description"),
    ],
)
def test_invalid_files_point_at_the_offending_key(tmp_path, changes, path):
    with pytest.raises(ValidationError) as excinfo:
        ChannelFileReader(write(tmp_path, valid_payload(**changes)))
    assert excinfo.value.path == path


def test_file_level_problems(tmp_path):
    with pytest.raises(ValidationError, match="not found"):
        ChannelFileReader(tmp_path / "absent.json")
    with pytest.raises(ValidationError, match=".json"):
        ChannelFileReader(write(tmp_path, valid_payload(), name="channels.txt"))
    with pytest.raises(ValidationError, match="Invalid JSON"):
        ChannelFileReader(write(tmp_path, "{\n  \"input_size\": 2,\n"))
    with pytest.raises(ValidationError, match="Unknown root keys"):
        ChannelFileReader(write(tmp_path, valid_payload(extra=1)))
