"""Tests for configuration validation."""
import pytest

from config_validator import ConfigStatus, ConfigValidator, validate_config
from src.algebra.algebra_config import AlgebraConfig


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("ENUMERATION_BUDGET", "PROBE_CARRIER_LIMIT", "MAX_CONCURRENT_JOBS", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


class TestConfigValidator:
    """Tests for the startup report"""

    def test_defaults_pass(self, clean_env, capsys):
        assert validate_config()
        out = capsys.readouterr().out
        assert "CONFIGURATION VALIDATION" in out
        assert f"{ConfigStatus.VALID.value} ENUMERATION_BUDGET: 10000000" in out

    def test_non_integer_is_an_error(self, clean_env, capsys):
        clean_env.setenv("ENUMERATION_BUDGET", "lots")
        assert not validate_config()
        assert "ENUMERATION_BUDGET must be an integer" in capsys.readouterr().out

    def test_below_minimum_is_an_error(self, clean_env):
        clean_env.setenv("MAX_CONCURRENT_JOBS", "0")
        validator = ConfigValidator()
        assert not validator.validate_all()
        assert validator.errors == ["MAX_CONCURRENT_JOBS must be at least 1, got 0"]

    def test_zero_probe_carriers_allowed(self, clean_env):
        clean_env.setenv("PROBE_CARRIER_LIMIT", "0")
        validator = ConfigValidator()
        validator.validate_all()
        assert validator.errors == []

    def test_unknown_log_level_is_a_warning(self, clean_env):
        clean_env.setenv("LOG_LEVEL", "chatty")
        validator = ConfigValidator()
        assert validator.validate_all()
        assert any("LOG_LEVEL" in w for w in validator.warnings)

    def test_exit_on_error(self, clean_env):
        clean_env.setenv("ENUMERATION_BUDGET", "-5")
        with pytest.raises(SystemExit) as excinfo:
            validate_config(exit_on_error=True)
        assert excinfo.value.code == 1


class TestAlgebraConfig:
    """Tests for the library's own settings"""

    def test_budget_override(self):
        AlgebraConfig.ENUMERATION_BUDGET = 50
        assert AlgebraConfig.budget() == 50
        assert AlgebraConfig.budget(7) == 7

    def test_validate_rejects_non_positive(self):
        AlgebraConfig.PROBE_BUDGET = 0
        with pytest.raises(ValueError, match="PROBE_BUDGET"):
            AlgebraConfig.validate_config()

    def test_negative_carrier_limit(self):
        AlgebraConfig.PROBE_CARRIER_LIMIT = -1
        with pytest.raises(ValueError, match="PROBE_CARRIER_LIMIT"):
            AlgebraConfig.validate_config()

    def test_zero_object_limit_means_whole_fibres(self):
        AlgebraConfig.SUITE_OBJECT_LIMIT = 0
        assert AlgebraConfig.object_limit() is None
        assert AlgebraConfig.validate_config()

    def test_object_limit(self):
        AlgebraConfig.SUITE_OBJECT_LIMIT = 4
        assert AlgebraConfig.object_limit() == 4

    def test_negative_object_limit(self):
        AlgebraConfig.SUITE_OBJECT_LIMIT = -2
        with pytest.raises(ValueError, match="SUITE_OBJECT_LIMIT must be non-negative"):
            AlgebraConfig.validate_config()
