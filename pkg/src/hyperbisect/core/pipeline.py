"""High-level orchestration that dispatches solve requests to the solver modes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from loguru import logger

from hyperbisect.combinatorics import BlockPartition, enumerate_partitions, first_partition
from hyperbisect.data.documents import CertificateDocument, MeasureMass, arrangement_payload
from hyperbisect.errors import DegenerateSpanError, NoBisectingCutError, PreconditionError
from hyperbisect.geometry import Arrangement
from hyperbisect.measures import MeasureFamily, residual, side_masses
from hyperbisect.settings import Settings
from hyperbisect.solver import (
    ContinuationConfig,
    SolveReport,
    best_report,
    brute_force_bisect,
    cover_support,
    enumerate_bisecting_separated,
    homotopy_solve,
    hyperplane_count,
    projection_lift,
    solve_separated,
    sweep_partitions,
)

SOLVE_MODES = ("separated", "homotopy", "project", "brute", "cover")
ENUMERATE_MODES = ("separated", "brute")


@dataclass
class SolveOutcome:
    arrangement: Optional[Arrangement]
    certificate: CertificateDocument
    report: Optional[SolveReport] = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.certificate.verified


def build_certificate(
    fam: MeasureFamily,
    arr: Optional[Arrangement],
    *,
    mode: str,
    seed: int,
    status: str | None = None,
    diagnostics: dict[str, Any] | None = None,
) -> CertificateDocument:
    """Recompute side masses on ``fam``.

    A missing arrangement leaves every mass on the positive side.
    """

    if arr is None:
        masses = [
            MeasureMass(
                positive_mass=m.total_weight,
                negative_mass=0.0,
                on_cut_mass=0.0,
                total=m.total_weight,
            )
            for m in fam
        ]
        residual_max = 1.0
        payload: list[list[float]] = []
    else:
        masses = [MeasureMass.from_side_masses(m) for m in side_masses(fam, arr)]
        residual_max = residual(fam, arr).max_abs
        payload = arrangement_payload(arr)
    verified = all(mass.bisected for mass in masses)
    return CertificateDocument(
        arrangement=payload,
        per_measure=masses,
        verified=verified,
        mode=mode,
        seed=seed,
        status=status or ("verified" if verified else "unverified"),
        residual_max=residual_max,
        diagnostics=diagnostics or {},
    )


class BisectionPipeline:
    """Facade over the separated, continuation, projection and brute-force solvers."""

    def __init__(
        self, settings: Settings, *, config: Optional[ContinuationConfig] = None
    ) -> None:
        self.settings = settings
        self.config = config or ContinuationConfig.from_settings(settings)

    def partition(
        self, fam: MeasureFamily, D: int, index: Optional[int] = None
    ) -> BlockPartition:
        if index is None:
            return first_partition(fam.dim, D)
        partitions = enumerate_partitions(fam.dim, D, limit=self.settings.enumeration_limit)
        if not 0 <= index < len(partitions):
            raise PreconditionError(f"Partition index {index} outside 0..{len(partitions) - 1}")
        return partitions[index]

    def solve(
        self,
        fam: MeasureFamily,
        D: int,
        *,
        mode: str = "homotopy",
        seed: Optional[int] = None,
        partition_index: Optional[int] = None,
        sweep: bool = False,
        workers: Optional[int] = None,
    ) -> SolveOutcome:
        if mode not in SOLVE_MODES:
            expected = ", ".join(SOLVE_MODES)
            raise PreconditionError(f"Unknown mode {mode!r}; expected one of {expected}")
        if D < 1:
            raise PreconditionError(f"D must be positive, got {D}")
        seed = self.settings.default_seed if seed is None else seed
        logger.info(
            "Solving bisection problem", mode=mode, n=fam.dim, measures=fam.k, D=D, seed=seed
        )

        report: Optional[SolveReport] = None
        diagnostics: dict[str, Any] = {}
        arrangement: Optional[Arrangement] = None
        try:
            if mode == "separated":
                self._check_count(fam, D)
                arrangement = solve_separated(fam, self.partition(fam, D, partition_index))
            elif mode == "homotopy":
                self._check_count(fam, D)
                report = self._homotopy(fam, D, seed, partition_index, sweep, workers)
                arrangement = report.arrangement
                diagnostics = dict(report.diagnostics)
            elif mode == "project":
                arrangement = projection_lift(fam, D, cfg=self.config, seed=seed)
            elif mode == "cover":
                arrangement = cover_support(fam, D)
            else:
                found = brute_force_bisect(fam, D, max_points=self.settings.brute_force_max_points)
                arrangement = found[0] if found else None
                diagnostics["found"] = len(found)
        except (NoBisectingCutError, DegenerateSpanError) as exc:
            logger.warning("Solver failed", mode=mode, error=str(exc))
            diagnostics["error"] = str(exc)

        status = report.status if report is not None else None
        if arrangement is None and status is None:
            status = "failed"
        certificate = build_certificate(
            fam, arrangement, mode=mode, seed=seed, status=status, diagnostics=diagnostics
        )
        if report is not None and report.verified != certificate.verified:
            logger.warning(
                "Report and certificate disagree",
                report=report.verified,
                certificate=certificate.verified,
            )
        return SolveOutcome(arrangement, certificate, report, diagnostics)

    def enumerate(
        self, fam: MeasureFamily, D: int, *, mode: str = "separated"
    ) -> list[Arrangement]:
        if mode not in ENUMERATE_MODES:
            raise PreconditionError(f"Unknown enumeration mode {mode!r}")
        if mode == "brute":
            return brute_force_bisect(fam, D, max_points=self.settings.brute_force_max_points)
        self._check_count(fam, D)
        return enumerate_bisecting_separated(fam, limit=self.settings.separated_enumeration_limit)

    def _homotopy(
        self,
        fam: MeasureFamily,
        D: int,
        seed: int,
        partition_index: Optional[int],
        sweep: bool,
        workers: Optional[int],
    ) -> SolveReport:
        if sweep:
            reports = sweep_partitions(
                fam,
                self.config,
                seed=seed,
                max_workers=workers or self.settings.sweep_workers,
                limit=self.settings.enumeration_limit,
            )
            return best_report(reports)
        return homotopy_solve(fam, self.config, self.partition(fam, D, partition_index), seed=seed)

    @staticmethod
    def _check_count(fam: MeasureFamily, D: int) -> None:
        if hyperplane_count(fam) != D:
            raise PreconditionError(
                f"{fam.k} measures in R^{fam.dim} need D={fam.k // fam.dim}, got D={D}"
            )
