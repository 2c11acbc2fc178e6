from hyperbisect.experiments.runner import SweepConfig, SweepResult, SweepRunner

__all__ = ["SweepConfig", "SweepResult", "SweepRunner"]
