"""Ham-sandwich cuts for n point measures in R^n by exhaustive candidate sweep."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np
from loguru import logger

from hyperbisect.errors import DegenerateSpanError, NoBisectingCutError, PreconditionError
from hyperbisect.geometry import Arrangement, Hyperplane, hyperplane_through
from hyperbisect.measures import DiscreteMeasure, MeasureFamily, is_bisecting

COINCIDENCE_TOL = 1e-9


def as_family(measures: MeasureFamily | Sequence[DiscreteMeasure]) -> MeasureFamily:
    if isinstance(measures, MeasureFamily):
        return measures
    return MeasureFamily(tuple(measures))


def iter_candidate_cuts(fam: MeasureFamily) -> Iterator[Hyperplane]:
    """Hyperplanes through one support point of each measure, in lexicographic index order."""

    for choice in product(*(range(measure.size) for measure in fam)):
        anchors = np.stack([fam[index].points[point] for index, point in enumerate(choice)])
        try:
            yield hyperplane_through(anchors)
        except DegenerateSpanError:
            continue


def _check_ham_sandwich_input(fam: MeasureFamily) -> None:
    if fam.k != fam.dim:
        raise PreconditionError(
            f"A ham-sandwich cut in R^{fam.dim} takes {fam.dim} measures, got {fam.k}"
        )
    if not all(measure.oddly_supported for measure in fam):
        raise PreconditionError(
            "Ham-sandwich sweep needs oddly supported measures (equal weights, odd count)"
        )


def ham_sandwich(measures: MeasureFamily | Sequence[DiscreteMeasure]) -> Hyperplane:
    """First verified candidate cut.

    With odd equal-weight supports in general position a bisecting hyperplane passes
    through exactly one support point of every measure, so the sweep is exhaustive.
    """

    fam = as_family(measures)
    _check_ham_sandwich_input(fam)
    for cut in iter_candidate_cuts(fam):
        if is_bisecting(fam, Arrangement((cut,))):
            return cut
    logger.warning("No candidate cut verified", dim=fam.dim, sizes=[m.size for m in fam])
    raise NoBisectingCutError(
        "No candidate hyperplane bisects the measures; check general position"
    )


def bisecting_candidates(measures: MeasureFamily | Sequence[DiscreteMeasure]) -> list[Hyperplane]:
    """Every verified cut of the sweep (duplicates possible when anchors share a line)."""

    fam = as_family(measures)
    _check_ham_sandwich_input(fam)
    return [cut for cut in iter_candidate_cuts(fam) if is_bisecting(fam, Arrangement((cut,)))]


def cuts_coincide(first: Hyperplane, second: Hyperplane, tol: float = COINCIDENCE_TOL) -> bool:
    a, b = first.vector, second.vector
    if a.shape != b.shape:
        return False
    return bool(min(np.abs(a - b).max(), np.abs(a + b).max()) <= tol)


def uniqueness_check(
    measures: MeasureFamily | Sequence[DiscreteMeasure],
    cuts: Iterable[Hyperplane] | None = None,
) -> bool:
    """True iff the verified cuts among ``cuts`` (default: the full sweep) agree up to sign."""

    fam = as_family(measures)
    pool = list(cuts) if cuts is not None else bisecting_candidates(fam)
    verified = [
        cut for cut in pool if cut.dim == fam.dim and is_bisecting(fam, Arrangement((cut,)))
    ]
    if not verified:
        return False
    reference = verified[0]
    return all(cuts_coincide(reference, cut) for cut in verified[1:])
