import importlib
import os

import pytest

import settings as settings_module
from settings import WorkbenchSettings, get_settings


@pytest.fixture
def dotenv_dir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("RALOOP_SEED", raising=False)
    (tmp_path / ".env").write_text("RALOOP_SEED=11\nRALOOP_MODULUS=5\n")
    return tmp_path


def test_env_file_is_read_without_touching_environment(dotenv_dir):
    importlib.reload(settings_module)
    loaded = WorkbenchSettings()
    assert loaded.seed == 11
    assert loaded.modulus == 5
    assert "RALOOP_SEED" not in os.environ


def test_environment_overrides_env_file(dotenv_dir, monkeypatch):
    monkeypatch.setenv("RALOOP_SEED", "4")
    get_settings.cache_clear()
    try:
        assert get_settings().seed == 4
        assert get_settings().modulus == 5
    finally:
        get_settings.cache_clear()


def test_negative_sample_bound_rejected(dotenv_dir, monkeypatch):
    monkeypatch.setenv("RALOOP_SAMPLE_BOUND", "-1")
    with pytest.raises(ValueError):
        WorkbenchSettings()
