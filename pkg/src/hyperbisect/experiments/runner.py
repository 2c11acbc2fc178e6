"""Seeded random-instance sweeps measuring how often continuation verifies an arrangement."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import pandas as pd
from loguru import logger

from hyperbisect.geometry import is_degenerate
from hyperbisect.measures import random_oddly_supported_family
from hyperbisect.solver import (
    ContinuationConfig,
    SolveReport,
    best_report,
    homotopy_solve,
    sweep_partitions,
)


@dataclass
class SweepConfig:
    instances: int = 20
    n: int = 2
    D: int = 2
    points_per_measure: int = 11
    seed: int = 0
    sweep_partitions: bool = True
    max_workers: int = 1

    def __post_init__(self) -> None:
        if self.instances < 1 or self.n < 1 or self.D < 1:
            raise ValueError("instances, n and D must be positive")
        if self.points_per_measure < 1 or self.points_per_measure % 2 == 0:
            raise ValueError("points_per_measure must be a positive odd integer")


@dataclass
class SweepResult:
    table: pd.DataFrame
    stats: Dict[str, float]


class SweepRunner:
    """Runs the continuation solver over random oddly supported families."""

    def __init__(
        self,
        config: Optional[SweepConfig] = None,
        continuation: Optional[ContinuationConfig] = None,
    ) -> None:
        self.config = config or SweepConfig()
        self.continuation = continuation or ContinuationConfig.from_settings()

    def run(self) -> SweepResult:
        rows: List[Dict[str, Any]] = []
        for instance in range(self.config.instances):
            seed = self.config.seed + instance
            report = self._solve_instance(seed)
            arrangement = report.arrangement
            rows.append(
                {
                    "instance": instance,
                    "seed": seed,
                    "verified": report.verified,
                    "status": report.status,
                    "residual_max": report.residual_max,
                    "steps": report.steps,
                    "partition": str(report.seed_partition),
                    "degenerate": bool(arrangement is not None and is_degenerate(arrangement)),
                }
            )
        table = pd.DataFrame(rows)
        stats = {
            "instances": float(len(table)),
            "verified": float(table["verified"].sum()),
            "success_rate": float(table["verified"].mean()),
            "degenerate": float(table["degenerate"].sum()),
            "mean_steps": float(table["steps"].mean()),
        }
        logger.info("Sweep finished", **stats)
        return SweepResult(table=table, stats=stats)

    def _solve_instance(self, seed: int) -> SolveReport:
        cfg = self.config
        fam = random_oddly_supported_family(cfg.n, cfg.n * cfg.D, cfg.points_per_measure, seed)
        report = homotopy_solve(fam, self.continuation, seed=seed)
        if report.verified or not cfg.sweep_partitions:
            return report
        reports = sweep_partitions(
            fam, self.continuation, seed=seed, max_workers=cfg.max_workers
        )
        return best_report(reports)
