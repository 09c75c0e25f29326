"""Tests for settings."""

import pytest
from pydantic import ValidationError

from pdscert.config import Settings, get_settings


def test_defaults(monkeypatch):
    for name in ("PDSCERT_JOBS", "PDSCERT_SEARCH_TIMEOUT", "PDSCERT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    settings = Settings(_env_file=None)
    assert settings.jobs == 1
    assert settings.search_timeout is None
    assert settings.prune_automorphisms is False
    assert settings.certificate_indent == 2


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PDSCERT_JOBS", "3")
    monkeypatch.setenv("PDSCERT_SEARCH_TIMEOUT", "2.5")
    monkeypatch.setenv("PDSCERT_PRUNE_AUTOMORPHISMS", "true")
    settings = Settings(_env_file=None)
    assert settings.jobs == 3
    assert settings.search_timeout == 2.5
    assert settings.prune_automorphisms is True


def test_env_file(tmp_path, monkeypatch):
    monkeypatch.delenv("PDSCERT_CERTIFICATE_INDENT", raising=False)
    env = tmp_path / ".env"
    env.write_text("PDSCERT_CERTIFICATE_INDENT=4\n")
    assert Settings(_env_file=env).certificate_indent == 4


def test_invalid_jobs(monkeypatch):
    monkeypatch.setenv("PDSCERT_JOBS", "0")
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


def test_get_settings_is_cached():
    assert get_settings() is get_settings()
