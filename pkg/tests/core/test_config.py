"""
Tests for environment-driven settings.
"""

import pytest

from shapql.core.config import Environment, Settings


class TestSettingsDefaults:
    """Values used when no SHAPQL_* variable is set."""

    def test_limits_default(self, monkeypatch):
        for name in ("SHAPQL_EXACT_PLAYER_LIMIT", "SHAPQL_THREADS", "SHAPQL_CHASE_DEPTH"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings()
        assert settings.EXACT_PLAYER_LIMIT == 20
        assert settings.THREADS == 1
        assert settings.CHASE_DEPTH is None

    def test_unknown_environment_falls_back_to_development(self, monkeypatch):
        monkeypatch.setenv("SHAPQL_ENV", "staging")
        assert Settings().SHAPQL_ENV == Environment.DEVELOPMENT


class TestSettingsOverrides:
    """Environment variables override the defaults."""

    def test_integer_override(self, monkeypatch):
        monkeypatch.setenv("SHAPQL_ST_COUNT_EDGE_LIMIT", "7")
        assert Settings().ST_COUNT_EDGE_LIMIT == 7

    def test_chase_depth_override(self, monkeypatch):
        monkeypatch.setenv("SHAPQL_CHASE_DEPTH", "5")
        assert Settings().CHASE_DEPTH == 5

    @pytest.mark.parametrize("raw, expected", [("true", True), ("1", True), ("no", False)])
    def test_debug_flag(self, monkeypatch, raw, expected):
        monkeypatch.setenv("SHAPQL_DEBUG", raw)
        assert Settings().DEBUG is expected

    def test_non_integer_warns_and_keeps_default(self, monkeypatch):
        monkeypatch.setenv("SHAPQL_MEMO_SIZE", "lots")
        with pytest.warns(UserWarning, match="not an integer"):
            settings = Settings()
        assert settings.MEMO_SIZE == 200_000


class TestSettingsValidation:
    """Non-positive limits warn in development and fail in production."""

    def test_development_clamps_to_one(self, monkeypatch):
        monkeypatch.setenv("SHAPQL_ENV", "development")
        monkeypatch.setenv("SHAPQL_THREADS", "0")
        with pytest.warns(UserWarning, match="SHAPQL_THREADS"):
            settings = Settings()
        assert settings.THREADS == 1

    def test_production_raises(self, monkeypatch):
        monkeypatch.setenv("SHAPQL_ENV", "production")
        monkeypatch.setenv("SHAPQL_PQE_UNCERTAIN_LIMIT", "-3")
        with pytest.raises(ValueError, match="SHAPQL_PQE_UNCERTAIN_LIMIT"):
            Settings()
