"""Tests for environment-driven settings."""

import pytest

from krigmorph.errors import ConfigurationError
from krigmorph.services import settings


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for env_var in settings.ENV_VAR_MAP.values():
        monkeypatch.delenv(env_var, raising=False)


class TestSettings:
    def test_defaults(self):
        assert settings.get_all_settings() == {
            "chunk_size": "4096",
            "max_workers": "4",
            "log_level": "warn",
        }
        assert settings.get_chunk_size() == 4096
        assert settings.get_max_workers() == 4
        assert settings.get_log_level() == "warn"

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("KRIGMORPH_CHUNK", " 128 ")
        monkeypatch.setenv("KRIGMORPH_WORKERS", "1")
        monkeypatch.setenv("KRIGMORPH_LOG_LEVEL", "DEBUG")
        assert settings.get_chunk_size() == 128
        assert settings.get_max_workers() == 1
        assert settings.get_log_level() == "debug"

    def test_explicit_default_wins_over_builtin(self):
        assert settings.get_setting(settings.CHUNK_SIZE, default="7") == "7"

    @pytest.mark.parametrize(
        "env_var, value, getter",
        [
            ("KRIGMORPH_CHUNK", "lots", settings.get_chunk_size),
            ("KRIGMORPH_CHUNK", "0", settings.get_chunk_size),
            ("KRIGMORPH_WORKERS", "-2", settings.get_max_workers),
            ("KRIGMORPH_LOG_LEVEL", "verbose", settings.get_log_level),
        ],
    )
    def test_invalid_values(self, monkeypatch, env_var, value, getter):
        monkeypatch.setenv(env_var, value)
        with pytest.raises(ConfigurationError, match=env_var):
            getter()
