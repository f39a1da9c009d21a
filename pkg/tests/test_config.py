from pathlib import Path

import pytest

from musubi.utils.config import CONFIG_PATH, DEFAULTS, MusubiConfig
from musubi.utils.router import MusubiGroup, PartialConfig

CONFIG = """
musubi:
  tolerance: 1.0e-6
  backend: "exact"
  samples:
    seed: 9
"""


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    path = tmp_path / "config.yml"
    path.write_text(CONFIG, encoding="utf-8")
    return path


def test_missing_file_gives_defaults(tmp_path: Path) -> None:
    config = MusubiConfig(tmp_path / "absent.yml")
    assert config.all() == DEFAULTS
    assert config["tolerance"] == 1e-9
    assert "samples" in config
    assert config.get("nothing", 4) == 4


def test_sections_merge_with_defaults(config_file: Path) -> None:
    config = MusubiConfig(config_file)
    assert config["tolerance"] == 1e-6
    assert config["backend"] == "exact"
    assert config["samples"] == {"per_region": 200, "seed": 9}
    assert config["margulis"] == DEFAULTS["margulis"]
    assert len(config) == len(DEFAULTS)


def test_empty_file(tmp_path: Path) -> None:
    path = tmp_path / "config.yml"
    path.write_text("", encoding="utf-8")
    assert MusubiConfig(path).all() == DEFAULTS


def test_group_flattens_config(config_file: Path) -> None:
    group = MusubiGroup(config_path=config_file)
    assert group.config == PartialConfig(tolerance=1e-6, backend="exact", seed=9)


def test_group_defaults(tmp_path: Path) -> None:
    group = MusubiGroup(config_path=tmp_path / "absent.yml")
    assert group.config == PartialConfig()
    assert group.config.witness_depth == 3


def test_group_and_config_share_the_default_path() -> None:
    assert MusubiGroup().config_path == CONFIG_PATH
    assert MusubiConfig().path == CONFIG_PATH
