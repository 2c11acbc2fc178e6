"""Bisecting arrangements of well-separated families, one per block partition."""

from __future__ import annotations

import numpy as np
from loguru import logger

from hyperbisect.combinatorics import BlockPartition, count_partitions, iter_partitions
from hyperbisect.errors import (
    DegenerateSpanError,
    EnumerationLimitError,
    NoBisectingCutError,
    PreconditionError,
    SeparationError,
)
from hyperbisect.geometry import (
    Arrangement,
    Hyperplane,
    arrangements_close,
    canonicalize,
    hyperplane_through,
    is_degenerate,
)
from hyperbisect.measures import MeasureFamily, is_bisecting
from hyperbisect.sandwich import ham_sandwich, is_well_separated

DEFAULT_SEPARATED_LIMIT = 10_000


def hyperplane_count(fam: MeasureFamily) -> int:
    """D such that the family holds nD measures in R^n."""

    if fam.k % fam.dim != 0:
        raise PreconditionError(
            f"{fam.k} measures in R^{fam.dim} is not a multiple of the dimension"
        )
    return fam.k // fam.dim


def _check_partition(fam: MeasureFamily, part: BlockPartition) -> None:
    if part.n != fam.dim or part.n * part.D != fam.k:
        raise PreconditionError(
            f"Partition into {part.D} blocks of {part.n} does not fit "
            f"{fam.k} measures in R^{fam.dim}"
        )


def require_separated(fam: MeasureFamily) -> None:
    verdict = is_well_separated(fam)
    if verdict is False:
        raise SeparationError("Family is not well separated")
    if verdict is None:
        logger.warning(
            "Separation undecided; proceeding with the separated construction", measures=fam.k
        )


def solve_separated(
    fam: MeasureFamily, part: BlockPartition, *, check_separation: bool = True
) -> Arrangement:
    """Block j of the partition gets the ham-sandwich cut of its n measures."""

    hyperplane_count(fam)
    _check_partition(fam, part)
    if check_separation:
        require_separated(fam)
    arrangement = Arrangement(tuple(ham_sandwich(fam.subfamily(block)) for block in part))
    if not is_bisecting(fam, arrangement):
        raise NoBisectingCutError(f"Block cuts for partition {part} do not bisect the whole family")
    return arrangement


def cover_support(fam: MeasureFamily, D: int) -> Arrangement:
    """D hyperplanes whose union holds every support point, which bisects any family.

    Consecutive runs of n points get the hyperplane through them and a shorter last run
    gets one member of the pencil through it. Hyperplanes left over pass through the
    first point with distinct normals. Point masses in general position need nD >= m,
    so nD + 1 of them are covered by D + 1 hyperplanes but never by D.
    """

    points = fam.points
    count, dim = points.shape
    if D < 1:
        raise PreconditionError(f"D must be positive, got {D}")
    if count > dim * D:
        raise PreconditionError(
            f"{count} support points cannot lie on {D} hyperplanes in R^{dim}; "
            f"need D >= {-(-count // dim)}"
        )
    planes = [hyperplane_through(points[start : start + dim]) for start in range(0, count, dim)]
    spare = 1
    while len(planes) < D:
        normal = np.array([float(spare + 1) ** power for power in range(dim)])
        planes.append(Hyperplane.from_coeffs(np.concatenate([[-normal @ points[0]], normal])))
        spare += 1
    arrangement = Arrangement(tuple(planes))
    if is_degenerate(arrangement):
        raise DegenerateSpanError("Covering hyperplanes coincide; the support is not generic")
    if not is_bisecting(fam, arrangement):
        raise NoBisectingCutError("Covering hyperplanes miss a support point")
    logger.debug("Covered support points", points=count, D=D, dim=dim)
    return arrangement


def enumerate_bisecting_separated(
    fam: MeasureFamily, *, limit: int = DEFAULT_SEPARATED_LIMIT
) -> list[Arrangement]:
    """One canonical arrangement per block partition."""

    D = hyperplane_count(fam)
    total = count_partitions(fam.dim, D)
    if total > limit:
        raise EnumerationLimitError(
            f"N({fam.dim},{D}) = {total} exceeds the separated enumeration limit {limit}"
        )
    require_separated(fam)

    found: list[Arrangement] = []
    for part in iter_partitions(fam.dim, D):
        arrangement = canonicalize(solve_separated(fam, part, check_separation=False))
        if any(arrangements_close(arrangement, other) for other in found):
            logger.warning("Partitions merged into one arrangement", partition=str(part))
            continue
        found.append(arrangement)
    logger.info(
        "Enumerated separated arrangements", n=fam.dim, D=D, partitions=total, distinct=len(found)
    )
    return found
