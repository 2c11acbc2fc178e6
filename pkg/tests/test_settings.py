"""Settings tests."""

import pytest
from pydantic import ValidationError

from hyperbisect.settings import Settings, get_settings


def test_settings_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("HYPERBISECT_LOG_LEVEL", raising=False)
    monkeypatch.delenv("HYPERBISECT_NEWTON_TOL", raising=False)

    settings = Settings()

    assert settings.log_level == "INFO"
    assert settings.newton_tol == 1e-10
    assert settings.enumeration_limit == 1_000_000


def test_settings_read_prefixed_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("HYPERBISECT_T_STEP_INIT", "0.2")
    monkeypatch.setenv("HYPERBISECT_SWEEP_WORKERS", "4")

    settings = Settings()

    assert settings.t_step_init == 0.2
    assert settings.sweep_workers == 4


def test_settings_reject_inverted_step_bounds(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("HYPERBISECT_T_STEP_INIT", "1e-6")

    with pytest.raises(ValidationError):
        Settings()


def test_get_settings_is_cached() -> None:
    get_settings.cache_clear()
    assert get_settings() is get_settings()


def test_settings_choose_corrector(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("HYPERBISECT_CORRECTOR", raising=False)
    assert Settings().corrector == "pivot"

    monkeypatch.setenv("HYPERBISECT_CORRECTOR", "newton")
    monkeypatch.setenv("HYPERBISECT_MAX_PIVOTS", "500")
    settings = Settings()

    assert settings.corrector == "newton"
    assert settings.max_pivots == 500

    monkeypatch.setenv("HYPERBISECT_CORRECTOR", "secant")
    with pytest.raises(ValidationError):
        Settings()
