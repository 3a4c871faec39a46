"""
Analysis config parsing and tolerance handling
"""

import pytest

from core.config import Config
from core.errors import ConfigError
from core.settings import load_analysis_config, parse_analysis_config

BASE = {"mu": 1.0, "mu_tilde": 3.0, "kappa": 1.0, "a": 1.0}


def test_defaults():
    config = parse_analysis_config(dict(BASE))
    assert config.s is None and config.k is None
    assert config.m == 2
    assert config.dims == (1.0, 1.0, 1.0)
    assert config.scan_points == Config.SCAN_POINTS
    assert config.format == "json"
    assert config.inputs()["mu_tilde"] == 3.0


def test_missing_and_unknown_keys():
    values = dict(BASE)
    del values["kappa"]
    with pytest.raises(ConfigError) as excinfo:
        parse_analysis_config(values)
    assert excinfo.value.key == "kappa"

    with pytest.raises(ConfigError) as excinfo:
        parse_analysis_config({**BASE, "tol_residual": 1e-9, "shear": 0.3})
    assert excinfo.value.key == "shear"


def test_invalid_values_name_the_key():
    for key, value in (("a", -1.0), ("m", 0), ("scan", "spiral"), ("format", "xml"), ("tol_rank", 0.0)):
        with pytest.raises(ConfigError) as excinfo:
            parse_analysis_config({**BASE, key: value})
        assert excinfo.value.key == key


def test_require():
    config = parse_analysis_config(dict(BASE))
    with pytest.raises(ConfigError) as excinfo:
        config.require("s")
    assert excinfo.value.key == "s"


def test_tolerance_keys():
    config = parse_analysis_config({**BASE, "tol_residual": 1e-9, "tol_traction": 1e-8})
    assert config.tolerances == {"residual": 1e-9, "traction": 1e-8}
    saved = Config.snapshot()
    try:
        Config.override(config.tolerances)
        assert Config.RESIDUAL_TOL == 1e-9
        assert Config.TRACTION_TOL == 1e-8
    finally:
        Config.restore(saved)
    assert Config.RESIDUAL_TOL == 1e-10


def test_environment_scale(monkeypatch):
    saved = Config.snapshot()
    try:
        monkeypatch.setenv(Config.TOLERANCE_ENV, "10")
        assert Config.apply_environment() == 10.0
        assert Config.RESIDUAL_TOL == pytest.approx(1e-9)
        # applying the same scale twice does not compound
        Config.apply_environment()
        assert Config.RESIDUAL_TOL == pytest.approx(1e-9)
    finally:
        Config.restore(saved)


def test_toml_errors_carry_the_line(tmp_path):
    path = tmp_path / "settings.toml"
    path.write_text("mu = 1.0\nmu_tilde 3.0\n")
    with pytest.raises(ConfigError) as excinfo:
        load_analysis_config(str(path))
    assert excinfo.value.line == 2
