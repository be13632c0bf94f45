import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from domain.models import Channel, CompoundWiretap, Pairing
from utils.validators.channel_file_validator import ChannelFileValidator


@dataclass(frozen=True, slots=True, eq=False)
class ChannelFile:
    compound: CompoundWiretap
    description: str = ""


class ChannelFileReader:
    def __init__(self, channels_path: Path) -> None:
        """
        :param channels_path: Path to the channel file
        :raises ValidationError
        """
        self.raw = ChannelFileValidator(channels_path).validate()
        self.channels_path = channels_path

    def read(self) -> ChannelFile:
        """
        Builds the compound wiretap channel described by the file
        :return: ChannelFile with the compound and its free-text description
        """
        raw = self.raw
        compound = CompoundWiretap(
            legit=tuple(Channel(matrix) for matrix in raw["legit"]),
            eaves=tuple(Channel(matrix) for matrix in raw["eaves"]),
            pairing=Pairing.from_str(raw["pairing"]),
        )
        return ChannelFile(compound=compound, description=raw.get("description", ""))


def channel_file_payload(compound: CompoundWiretap, description: str = "") -> dict[str, Any]:
    payload: dict[str, Any] = {
        "input_size": compound.input_size,
        "legit": [channel.to_list() for channel in compound.legit],
        "eaves": [channel.to_list() for channel in compound.eaves],
        "pairing": compound.pairing.value,
    }
    if description:
        payload["description"] = description
    return payload


def write_channel_file(path: Path, compound: CompoundWiretap, description: str = "") -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(channel_file_payload(compound, description), indent=2) + "\n", encoding="utf-8")
    return path
