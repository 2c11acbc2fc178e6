"""Application-wide configuration management using Pydantic settings."""

from functools import lru_cache
from typing import Literal

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Typed configuration for solver limits, tolerances and logging."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    log_level: str = Field("INFO", alias="HYPERBISECT_LOG_LEVEL")
    enumeration_limit: int = Field(1_000_000, alias="HYPERBISECT_ENUMERATION_LIMIT")
    separated_enumeration_limit: int = Field(
        10_000, alias="HYPERBISECT_SEPARATED_ENUMERATION_LIMIT"
    )
    brute_force_max_points: int = Field(40, alias="HYPERBISECT_BRUTE_FORCE_MAX_POINTS")

    corrector: Literal["pivot", "newton"] = Field("pivot", alias="HYPERBISECT_CORRECTOR")
    max_pivots: int = Field(10_000, alias="HYPERBISECT_MAX_PIVOTS")
    t_step_init: float = Field(0.05, alias="HYPERBISECT_T_STEP_INIT")
    t_step_min: float = Field(1e-5, alias="HYPERBISECT_T_STEP_MIN")
    newton_tol: float = Field(1e-10, alias="HYPERBISECT_NEWTON_TOL")
    newton_max_iter: int = Field(50, alias="HYPERBISECT_NEWTON_MAX_ITER")
    degeneracy_tol: float = Field(1e-9, alias="HYPERBISECT_DEGENERACY_TOL")

    sweep_workers: int = Field(1, alias="HYPERBISECT_SWEEP_WORKERS")
    default_seed: int = Field(0, alias="HYPERBISECT_DEFAULT_SEED")

    @model_validator(mode="after")
    def _check_tolerances(self) -> "Settings":
        """Reject schedules the continuation solver cannot run with."""

        for name in ("t_step_init", "t_step_min", "newton_tol", "degeneracy_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.t_step_min >= self.t_step_init:
            raise ValueError("t_step_min must be smaller than t_step_init")
        if self.newton_max_iter < 1 or self.sweep_workers < 1 or self.max_pivots < 1:
            raise ValueError("newton_max_iter, max_pivots and sweep_workers must be at least 1")
        return self


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return cached Settings instance loaded from environment variables."""

    return Settings()
