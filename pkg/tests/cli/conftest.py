from pathlib import Path

import pytest

from xassoc.cli.main import run
from tests.conftest import SMALL_SYNTHETIC


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    path = tmp_path / "small.toml"
    path.write_text("".join(f"{key} = {value}\n" for key, value in SMALL_SYNTHETIC.items()))
    return path


@pytest.fixture
def generated(tmp_path: Path, config_file: Path) -> Path:
    data = tmp_path / "data"
    assert run(["gen", "--config", str(config_file), "--out", str(data), "-q"]) == 0
    return data


@pytest.fixture
def checkpoint(tmp_path: Path, generated: Path) -> Path:
    out = tmp_path / "dca.json"
    assert run(
        ["train", "--model", "dca", "--data", str(generated), "--out", str(out), "--epochs", "2", "-q"]
    ) == 0
    return out
