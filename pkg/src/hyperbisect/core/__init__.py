"""Solve orchestration shared by the command line and the experiment runner."""

from hyperbisect.core.pipeline import BisectionPipeline, SolveOutcome, build_certificate

__all__ = ["BisectionPipeline", "SolveOutcome", "build_certificate"]
