"""
Settings file loading and RunConfig validation.
"""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from unitroot.config import RunConfig, WorkbenchSettings, expand_env, load_settings, parse_weights


def _run(**overrides) -> RunConfig:
    values = dict(command="lfun", p=5, k=1, tdeg=2, prec=2, max_deg=2)
    values.update(overrides)
    return RunConfig(**values)


def test_expand_env(monkeypatch):
    monkeypatch.setenv("UNITROOT_TEST_DIR", "/tmp/traces")
    monkeypatch.delenv("UNITROOT_UNSET", raising=False)
    assert expand_env("${UNITROOT_TEST_DIR:-x}/a") == "/tmp/traces/a"
    assert expand_env({"a": ["${UNITROOT_UNSET:-fallback}"]}) == {"a": ["fallback"]}
    assert expand_env(3) == 3


def test_load_settings_from_file(tmp_path, monkeypatch):
    monkeypatch.setenv("UNITROOT_TEST_CACHE", str(tmp_path / "cache"))
    path = tmp_path / "config.yml"
    path.write_text(
        "cache:\n  dir: ${UNITROOT_TEST_CACHE}\n  compute_missing: false\n"
        "defaults:\n  tdeg: 3\n  prec: 2\n"
        "features:\n  analytic_unit_root: true\n"
    )
    settings = load_settings(str(path))
    assert settings.cache_dir == tmp_path / "cache"
    assert settings.cache.compute_missing is False
    assert settings.defaults.tdeg == 3
    assert settings.defaults.jobs == 1
    assert settings.features.analytic_unit_root is True


def test_builtin_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("UNITROOT_CONFIG", raising=False)
    monkeypatch.setenv("UNITROOT_CACHE_DIR", str(tmp_path / "c"))
    settings = load_settings()
    assert settings.cache_dir == tmp_path / "c"
    assert settings.envelopes.max_degree == {3: 8, 5: 6, 7: 6}


def test_parse_weights():
    assert parse_weights("0..4") == [0, 1, 2, 3, 4]
    assert parse_weights("-2..0") == [-2, -1, 0]
    assert parse_weights("4, 0,4,2") == [0, 2, 4]
    with pytest.raises(ValueError):
        parse_weights("5..1")


@pytest.mark.parametrize("overrides", [
    {"p": 9},
    {"p": 2},
    {"command": "plot"},
    {"out": "xml"},
    {"on": "Q"},
    {"smax": "-1/2"},
    {"prec": 0},
    {"tdeg": 4, "max_deg": 2},
    {"m": -1},
])
def test_invalid_run_configs(overrides):
    with pytest.raises(ValidationError):
        _run(**overrides)


def test_fiber_runs_ignore_table_degree():
    config = _run(command="fiber", lam="2", tdeg=6, max_deg=1)
    assert config.max_deg == 1


def test_slope_bound_is_rational():
    assert _run(smax="3/2").slope_bound == Fraction(3, 2)
    assert _run().slope_bound is None


def test_echo_leaves_out_execution_fields():
    echo = _run(jobs=4, cache="/tmp/x").echo()
    assert "jobs" not in echo and "cache" not in echo
    assert echo["p"] == 5 and echo["command"] == "lfun"
    assert echo == _run(jobs=1).echo()


def test_envelope_warnings():
    settings = WorkbenchSettings()
    assert _run().envelope_warnings(settings) == []
    warnings = _run(p=11, prec=7, tdeg=2, max_deg=2).envelope_warnings(settings)
    assert len(warnings) == 2
    assert len(_run(p=5, tdeg=7, max_deg=7).envelope_warnings(settings)) == 1
