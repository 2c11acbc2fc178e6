"""Well-separation tests and clustered-ball certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, islice, product
from typing import Sequence

import numpy as np
from loguru import logger
from scipy.optimize import linprog

from hyperbisect.errors import DimensionMismatchError, PreconditionError
from hyperbisect.measures import MeasureFamily

WITNESS_SEARCH_LIMIT = 100_000
_CHUNK = 20_000


@dataclass(frozen=True, eq=False)
class SeparationCertificate:
    """Ball centers b_i and a common radius alpha that certify well separation."""

    centers: np.ndarray
    radius: float

    def __post_init__(self) -> None:
        centers = np.array(self.centers, dtype=float)
        if centers.ndim != 2:
            raise ValueError("centers must be a (k, n) array")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        centers.setflags(write=False)
        object.__setattr__(self, "centers", centers)

    def holds_for(self, fam: MeasureFamily) -> bool:
        return separated_certificate(fam, self.centers, self.radius)


def hulls_intersect(first: np.ndarray, second: np.ndarray) -> bool:
    """Convex hulls of two point sets share a point (LP feasibility)."""

    a = np.atleast_2d(first)
    b = np.atleast_2d(second)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError("Point sets live in different dimensions")
    count_a, count_b = a.shape[0], b.shape[0]
    equalities = np.zeros((a.shape[1] + 2, count_a + count_b))
    equalities[: a.shape[1], :count_a] = a.T
    equalities[: a.shape[1], count_a:] = -b.T
    equalities[-2, :count_a] = 1.0
    equalities[-1, count_a:] = 1.0
    rhs = np.zeros(a.shape[1] + 2)
    rhs[-2:] = 1.0
    result = linprog(
        np.zeros(count_a + count_b), A_eq=equalities, b_eq=rhs, bounds=(0, None), method="highs"
    )
    return bool(result.status == 0)


def _min_singular_values(centers: np.ndarray, size: int) -> float:
    """Smallest singular value of the direction matrices of all ``size``-subsets of centers."""

    smallest = math.inf
    subsets = combinations(range(centers.shape[0]), size)
    while True:
        block = list(islice(subsets, _CHUNK))
        if not block:
            return smallest
        index = np.asarray(block)
        directions = centers[index[:, 1:]] - centers[index[:, :1]]
        values = np.linalg.svd(directions, compute_uv=False)
        smallest = min(smallest, float(values[:, -1].min()))


def flat_avoidance_bound(centers: np.ndarray) -> float:
    """Largest alpha with sigma_min > 2 alpha sqrt(n-1) on every n-subset.

    Below it no (n-2)-flat meets n of the balls.
    """

    array = np.atleast_2d(np.asarray(centers, dtype=float))
    count, dim = array.shape
    if dim < 2 or count < dim:
        return math.inf
    return _min_singular_values(array, dim) / (2.0 * math.sqrt(dim - 1))


def certificate_radius_bound(centers: np.ndarray) -> float:
    """Flat-avoidance bound, tightened so that no hyperplane meets n + 1 balls.

    (n+1)-subsets need sigma_min > 2 alpha sqrt(n) of their n x n direction matrix.
    """

    array = np.atleast_2d(np.asarray(centers, dtype=float))
    count, dim = array.shape
    bound = flat_avoidance_bound(array)
    if count >= dim + 1:
        bound = min(bound, _min_singular_values(array, dim + 1) / (2.0 * math.sqrt(dim)))
    return bound


def _supports_fit(fam: MeasureFamily, centers: np.ndarray, alpha: float) -> bool:
    return all(
        float(np.linalg.norm(measure.points - center, axis=1).max()) <= alpha
        for center, measure in zip(centers, fam)
    )


def separated_certificate(
    fam: MeasureFamily, centers: Sequence[Sequence[float]] | np.ndarray, alpha: float
) -> bool:
    """Supports sit in B(b_i, alpha) and no flat of the forbidden kind meets the balls."""

    array = np.atleast_2d(np.asarray(centers, dtype=float))
    if array.shape != (fam.k, fam.dim):
        raise DimensionMismatchError(
            f"Expected {fam.k} centers in R^{fam.dim}, got shape {array.shape}"
        )
    if not alpha > 0:
        raise PreconditionError(f"alpha must be positive, got {alpha!r}")
    return _supports_fit(fam, array, alpha) and alpha < certificate_radius_bound(array)


def centroid_certificate(fam: MeasureFamily) -> SeparationCertificate:
    """Weighted centroids with the smallest radius that contains every support."""

    centers = np.stack(
        [np.average(measure.points, axis=0, weights=measure.weights) for measure in fam]
    )
    radius = max(float(np.linalg.norm(m.points - c, axis=1).max()) for c, m in zip(centers, fam))
    scale = max(1.0, float(np.abs(fam.points).max()))
    return SeparationCertificate(centers, max(radius * (1.0 + 1e-12), 1e-12 * scale))


def _has_dependent_witness(fam: MeasureFamily) -> bool:
    dim = fam.dim
    scale = max(1.0, float(np.abs(fam.points).max()))
    budget = WITNESS_SEARCH_LIMIT
    for subset in combinations(range(fam.k), dim):
        for choice in product(*(range(fam[index].size) for index in subset)):
            budget -= 1
            if budget < 0:
                return False
            witness = np.stack([fam[index].points[point] for index, point in zip(subset, choice)])
            directions = witness[1:] - witness[0]
            if np.linalg.svd(directions, compute_uv=False)[-1] <= 1e-12 * scale:
                return True
    return False


def is_well_separated(fam: MeasureFamily) -> bool | None:
    """True, False, or None when neither the certificate nor a witness settles it (n > 2 only)."""

    dim = fam.dim
    if dim == 1 or fam.k < dim:
        return True
    pairwise = any(
        hulls_intersect(fam[i].points, fam[j].points) for i, j in combinations(range(fam.k), 2)
    )
    if dim == 2:
        return not pairwise
    if pairwise:
        return False
    certificate = centroid_certificate(fam)
    if certificate.radius < flat_avoidance_bound(certificate.centers):
        return True
    if _has_dependent_witness(fam):
        return False
    logger.warning("Well separation undecided", dim=dim, measures=fam.k)
    return None
