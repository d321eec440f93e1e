import pytest
from pydantic import ValidationError

from dualityengine.config import PACKAGE_DATA_DIR, Settings


def test_defaults(monkeypatch):
    for name in ("LOG_LEVEL", "DATA_DIR", "SEED", "LEIBNIZ_TRIALS", "DET_CHECK_LIMIT"):
        monkeypatch.delenv(f"DUALITYENGINE_{name}", raising=False)
    settings = Settings.from_env()
    assert settings.log_level == "WARNING"
    assert settings.data_dir == PACKAGE_DATA_DIR
    assert settings.leibniz_trials == 1000


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("DUALITYENGINE_LOG_LEVEL", "debug")
    monkeypatch.setenv("DUALITYENGINE_DATA_DIR", str(tmp_path))
    monkeypatch.setenv("DUALITYENGINE_SEED", "42")
    settings = Settings.from_env()
    assert settings.log_level == "DEBUG"
    assert settings.data_dir == tmp_path
    assert settings.seed == 42


@pytest.mark.parametrize("field,value", [("log_level", "LOUD"), ("leibniz_trials", 0)])
def test_invalid_values(field, value):
    with pytest.raises(ValidationError):
        Settings(**{field: value})
