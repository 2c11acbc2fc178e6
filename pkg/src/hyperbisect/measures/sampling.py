"""Oddly supported resampling, general-position checks and seeded family generators."""

from __future__ import annotations

from itertools import combinations, islice
from typing import Sequence

import numpy as np
from loguru import logger

from hyperbisect.errors import PreconditionError
from hyperbisect.measures.discrete import DiscreteMeasure, MeasureFamily

JITTER_FRACTION = 0.5e-9
GENERAL_POSITION_TOL = 1e-9
_CHUNK = 50_000


def sample_oddly_supported(source: DiscreteMeasure, N: int, rng_seed: int) -> DiscreteMeasure:
    """Draw N i.i.d. points from ``source`` and jitter them back into general position."""

    if N <= 0 or N % 2 == 0:
        raise PreconditionError(f"N must be a positive odd integer, got {N}")
    rng = np.random.default_rng(rng_seed)
    probabilities = source.weights / source.weights.sum()
    indices = rng.choice(source.size, size=N, p=probabilities)
    points = source.points[indices]
    extent = source.points.max(axis=0) - source.points.min(axis=0)
    diameter = float(np.linalg.norm(extent))
    scale = diameter if diameter > 0 else max(1.0, float(np.abs(source.points).max()))
    half_width = JITTER_FRACTION * scale / np.sqrt(source.dim)
    jitter = rng.uniform(-half_width, half_width, size=points.shape)
    return DiscreteMeasure(points + jitter, np.full(N, 1.0 / N))


def _tuples_in_general_position(points: np.ndarray, index_block: np.ndarray) -> bool:
    vertices = points[index_block]
    edges = vertices[:, 1:] - vertices[:, :1]
    determinants = np.abs(np.linalg.det(edges))
    lengths = np.linalg.norm(vertices[:, :, None, :] - vertices[:, None, :, :], axis=3)
    diagonal = np.arange(vertices.shape[1])
    lengths[:, diagonal, diagonal] = 1.0
    scale = np.prod(lengths, axis=2).min(axis=1)
    return bool(np.all((scale > 0) & (determinants > GENERAL_POSITION_TOL * scale)))


def check_general_position(fam: MeasureFamily) -> bool:
    """No n+1 support points of the union lie on a common hyperplane.

    Each (n+1)-tuple is tested through the determinant of its edge vectors, compared
    against the smallest product of edge lengths over all choices of base vertex, so
    the test is scale free and does not depend on the order of the points.
    """

    points = fam.points
    count, dim = points.shape
    if count < dim + 1:
        return True
    tuples = combinations(range(count), dim + 1)
    while True:
        block = list(islice(tuples, _CHUNK))
        if not block:
            return True
        if not _tuples_in_general_position(points, np.asarray(block)):
            logger.debug("General position violated", dim=dim, points=count)
            return False


def moment_curve(count: int, dim: int, start: float = 1.0) -> np.ndarray:
    """Points (t, t^2, ..., t^dim) at t = start, start + 1, ...; always in general position."""

    parameters = start + np.arange(count, dtype=float)
    return np.stack([parameters**power for power in range(1, dim + 1)], axis=1)


def random_oddly_supported_family(
    n: int, k: int, points_per_measure: int, seed: int
) -> MeasureFamily:
    """k uniform samples of odd size in the unit cube [0, 1]^n."""

    if points_per_measure <= 0 or points_per_measure % 2 == 0:
        raise PreconditionError("points_per_measure must be a positive odd integer")
    rng = np.random.default_rng(seed)
    return MeasureFamily(
        tuple(
            DiscreteMeasure.uniform(rng.uniform(0.0, 1.0, size=(points_per_measure, n)))
            for _ in range(k)
        )
    )


def clustered_family(
    centers: Sequence[Sequence[float]] | np.ndarray,
    radius: float,
    points_per_measure: int,
    seed: int,
) -> MeasureFamily:
    """One odd equal-weight cluster strictly inside each ball B(center, radius)."""

    if points_per_measure <= 0 or points_per_measure % 2 == 0:
        raise PreconditionError("points_per_measure must be a positive odd integer")
    rng = np.random.default_rng(seed)
    center_array = np.atleast_2d(np.asarray(centers, dtype=float))
    dim = center_array.shape[1]
    measures = []
    for center in center_array:
        directions = rng.normal(size=(points_per_measure, dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = 0.95 * radius * rng.uniform(0.0, 1.0, size=(points_per_measure, 1)) ** (1.0 / dim)
        measures.append(DiscreteMeasure.uniform(center + radii * directions))
    return MeasureFamily(tuple(measures))


def delta_family(points: Sequence[Sequence[float]] | np.ndarray) -> MeasureFamily:
    """One unit delta mass per point."""

    array = np.atleast_2d(np.asarray(points, dtype=float))
    return MeasureFamily(tuple(DiscreteMeasure(row.reshape(1, -1)) for row in array))


def lower_bound_family(n: int, D: int) -> MeasureFamily:
    """nD + 1 delta masses in general position: no arrangement of D hyperplanes bisects them all."""

    return delta_family(moment_curve(n * D + 1, n))
