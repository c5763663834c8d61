"""Tests for configuration loading."""
import logging

import pytest

from ordrev.config import Config


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "ORDREV_CONFIG",
        "ORDREV_WITNESS_DEPTH",
        "ORDREV_COLORING_SAMPLES",
        "ORDREV_ORACLE_WORKERS",
        "ORDREV_LOG_LEVEL",
        "ORDREV_SEED",
    ):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    config = Config.load()
    assert config.witness_depth == 256
    assert config.oracle_max_target == 30
    assert config.oracle_max_coeff == 10
    assert config.log_level == "WARNING"


def test_yaml_file(tmp_path):
    path = tmp_path / "ordrev.yaml"
    path.write_text("witness_depth: 48\noracle_workers: 4\n", encoding="utf-8")
    config = Config.load(path)
    assert config.witness_depth == 48
    assert config.oracle_workers == 4


def test_config_path_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "ordrev.yaml"
    path.write_text("seed: 9\n", encoding="utf-8")
    monkeypatch.setenv("ORDREV_CONFIG", str(path))
    assert Config.load().seed == 9


def test_environment_overrides_file(tmp_path, monkeypatch):
    path = tmp_path / "ordrev.yaml"
    path.write_text("witness_depth: 48\nlog_level: INFO\n", encoding="utf-8")
    monkeypatch.setenv("ORDREV_WITNESS_DEPTH", "16")
    monkeypatch.setenv("ORDREV_LOG_LEVEL", "debug")
    config = Config.load(path)
    assert config.witness_depth == 16
    assert config.log_level == "DEBUG"


def test_unknown_keys_are_skipped(tmp_path, caplog):
    path = tmp_path / "ordrev.yaml"
    path.write_text("witness_depht: 48\n", encoding="utf-8")
    with caplog.at_level(logging.WARNING, logger="ordrev.config"):
        config = Config.load(path)
    assert config.witness_depth == 256
    assert "witness_depht" in caplog.text


def test_empty_file_keeps_defaults(tmp_path):
    path = tmp_path / "ordrev.yaml"
    path.write_text("", encoding="utf-8")
    assert Config.load(path) == Config()


def test_non_mapping_is_rejected(tmp_path):
    path = tmp_path / "ordrev.yaml"
    path.write_text("[1, 2]\n", encoding="utf-8")
    with pytest.raises(ValueError):
        Config.load(path)
