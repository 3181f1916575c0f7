import pytest
from pydantic import ValidationError

from src.utils.config import Config, EnvConfig, SuiteLimits

pytestmark = pytest.mark.unit


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("CONFIG_PATH", "LOG_LEVEL", "SEED", "FAST_EQUALITY", "WORKERS"):
        monkeypatch.setattr(EnvConfig, name, None)


@pytest.fixture
def config():
    return Config()


def test_default_file(config):
    assert config.config_path.endswith("skein_config.yaml")
    assert config.get("parser.max_exponent") == 64
    assert config.max_exponent == 64
    assert config.seed == 0
    assert config.workers == 1


def test_limits_match_model_defaults(config):
    assert config.suite_limits() == SuiteLimits()


def test_overrides(config):
    limits = config.suite_limits(max_det=6, n_max=None)
    assert limits.max_det == 6
    assert limits.n_max == 8


def test_unknown_limit_rejected(config):
    with pytest.raises(ValidationError):
        config.suite_limits(max_dett=6)


def test_limits_must_be_positive():
    with pytest.raises(ValidationError):
        SuiteLimits(max_det=0)


def test_missing_file(tmp_path):
    config = Config(str(tmp_path / "absent.yaml"))
    assert config.config == {}
    assert config.get("verification.seed", 5) == 5
    assert config.coeff_settings().probe_points == 3


def test_set_and_save(tmp_path):
    path = tmp_path / "configs" / "skein.yaml"
    config = Config(str(path))
    config.set("verification.seed", 11)
    config.set("coeff.fast_equality", True)
    config.save()

    reloaded = Config(str(path))
    assert reloaded.seed == 11
    assert reloaded.coeff_settings().fast_equality is True


def test_environment_overrides(config, monkeypatch):
    monkeypatch.setattr(EnvConfig, "SEED", 42)
    monkeypatch.setattr(EnvConfig, "WORKERS", 3)
    monkeypatch.setattr(EnvConfig, "FAST_EQUALITY", True)
    monkeypatch.setattr(EnvConfig, "LOG_LEVEL", "DEBUG")
    assert config.seed == 42
    assert config.workers == 3
    assert config.coeff_settings().fast_equality is True
    assert config.log_level == "DEBUG"


def test_probe_points_range(tmp_path):
    config = Config(str(tmp_path / "absent.yaml"))
    config.set("coeff.probe_points", 9)
    with pytest.raises(ValidationError):
        config.coeff_settings()
