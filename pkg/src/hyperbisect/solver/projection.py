"""Solve in the largest power-of-two subspace and lift the cuts back by zero-padding."""

from __future__ import annotations

from loguru import logger

from hyperbisect.combinatorics import first_partition
from hyperbisect.errors import NoBisectingCutError, PreconditionError
from hyperbisect.geometry import Arrangement
from hyperbisect.measures import MeasureFamily, is_bisecting
from hyperbisect.sandwich import ham_sandwich, is_well_separated
from hyperbisect.solver.homotopy import (
    ContinuationConfig,
    best_report,
    homotopy_solve,
    sweep_partitions,
)
from hyperbisect.solver.separated import solve_separated


def projection_dimension(n: int) -> int:
    """Largest power of two not exceeding n."""

    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    return 1 << (n.bit_length() - 1)


def projection_lift(
    fam: MeasureFamily,
    D: int,
    *,
    cfg: ContinuationConfig | None = None,
    seed: int = 0,
) -> Arrangement:
    target = projection_dimension(fam.dim)
    if D < 1 or fam.k != target * D:
        raise PreconditionError(
            f"Projection to R^{target} with D={D} needs {target * D} measures, got {fam.k}"
        )
    low = fam.project(target)

    if D == 1:
        arrangement = Arrangement((ham_sandwich(low),))
    elif is_well_separated(low) is True:
        arrangement = solve_separated(low, first_partition(target, D), check_separation=False)
    else:
        report = homotopy_solve(low, cfg, seed=seed)
        if not report.verified:
            report = best_report(sweep_partitions(low, cfg, seed=seed))
        if not report.verified or report.arrangement is None:
            raise NoBisectingCutError(
                f"No verified arrangement in R^{target} (status {report.status})"
            )
        arrangement = report.arrangement

    lifted = arrangement.lift(fam.dim)
    if not is_bisecting(fam, lifted):
        raise NoBisectingCutError("Lifted arrangement does not bisect the original family")
    logger.info(
        "Projected solve lifted", source_dim=fam.dim, target_dim=target, hyperplanes=D
    )
    return lifted
