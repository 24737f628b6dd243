import pytest

from config import EngineConfig, get_env_bool, get_env_float, get_env_int, get_env_str


def test_defaults_are_valid():
    assert EngineConfig().validate() == []


@pytest.mark.parametrize("field,value,message", [
    ("exact_tol", 0.0, "exact_tol must be positive"),
    ("newton_max_iter", 0, "newton_max_iter must be at least 1"),
    ("tracker_safety", 1.0, "tracker_safety must exceed 1"),
    ("slice_tau", 0.0, "tau must be nonzero"),
    ("max_letters", 13, "max_letters must lie in 1..12"),
])
def test_validate_reports_problem(field, value, message):
    cfg = EngineConfig().override(**{field: value})
    assert message in cfg.validate()


def test_override_skips_none_and_unknown():
    base = EngineConfig(seed=3)
    cfg = base.override(seed=None, exact_tol=1e-6, colour="red")
    assert cfg.seed == 3
    assert cfg.exact_tol == 1e-6
    assert base.exact_tol == 1e-9


def test_apply_updates_in_place():
    target = EngineConfig()
    result = target.apply(EngineConfig(seed=7, tracker_tau=2.0))
    assert result is target
    assert (target.seed, target.tracker_tau) == (7, 2.0)


def test_env_readers(monkeypatch):
    monkeypatch.setenv("MORSE_SEED", " 11 ")
    monkeypatch.setenv("MORSE_SLICE_TAU", "oops")
    monkeypatch.setenv("MORSE_DEBUG_MODE", "Yes")
    monkeypatch.setenv("MORSE_APP_NAME", " mg ")
    assert get_env_int("SEED") == 11
    assert get_env_float("SLICE_TAU", 0.1) == 0.1
    assert get_env_bool("DEBUG_MODE") is True
    assert get_env_bool("MISSING", True) is True
    assert get_env_str("APP_NAME") == "mg"
