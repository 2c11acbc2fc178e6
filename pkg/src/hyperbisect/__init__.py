"""hyperbisect package root exports with lazy imports to keep startup light."""

from __future__ import annotations

from typing import Any

__all__ = ["BisectionPipeline", "Settings", "get_settings"]


def __getattr__(name: str) -> Any:
    if name == "BisectionPipeline":
        from hyperbisect.core.pipeline import BisectionPipeline

        return BisectionPipeline
    if name == "Settings":
        from hyperbisect.settings import Settings

        return Settings
    if name == "get_settings":
        from hyperbisect.settings import get_settings

        return get_settings
    raise AttributeError(f"module 'hyperbisect' has no attribute '{name}'")
