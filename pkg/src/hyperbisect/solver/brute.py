"""Exhaustive planar oracle: every arrangement of at most two candidate lines."""

from __future__ import annotations

from itertools import combinations

import numpy as np
from loguru import logger

from hyperbisect.errors import EnumerationLimitError, PreconditionError
from hyperbisect.geometry import Arrangement, canonicalize, is_degenerate
from hyperbisect.geometry.arrangement import ZERO_TOL
from hyperbisect.measures import MeasureFamily, is_bisecting
from hyperbisect.measures.discrete import BISECTION_REL_TOL

PERTURBATION = 1e-7
DEDUP_DECIMALS = 9


def _line_through(pivot: np.ndarray, normal: np.ndarray) -> np.ndarray:
    return np.concatenate([[-float(normal @ pivot)], normal])


def _rotate(normal: np.ndarray, angle: float) -> np.ndarray:
    cos, sin = np.cos(angle), np.sin(angle)
    return np.array([cos * normal[0] - sin * normal[1], sin * normal[0] + cos * normal[1]])


def candidate_lines(points: np.ndarray, perturbation: float = PERTURBATION) -> np.ndarray:
    """Lines through point pairs and axis lines through single points.

    Every base line comes with four perturbed variants.
    """

    bases: list[tuple[np.ndarray, np.ndarray]] = []
    for i, j in combinations(range(len(points)), 2):
        direction = points[j] - points[i]
        if np.linalg.norm(direction) == 0:
            continue
        bases.append((0.5 * (points[i] + points[j]), np.array([-direction[1], direction[0]])))
    for point in points:
        bases.append((point, np.array([1.0, 0.0])))
        bases.append((point, np.array([0.0, 1.0])))

    lines = []
    for pivot, normal in bases:
        normal = normal / np.linalg.norm(normal)
        line = _line_through(pivot, normal)
        lines.append(line)
        lines.append(_line_through(pivot, _rotate(normal, perturbation)))
        lines.append(_line_through(pivot, _rotate(normal, -perturbation)))
        lines.append(line - np.array([perturbation, 0.0, 0.0]))
        lines.append(line + np.array([perturbation, 0.0, 0.0]))
    matrix = np.asarray(lines, dtype=float).reshape(-1, 3)
    return matrix / np.linalg.norm(matrix, axis=1, keepdims=True)


def _bisected_columns(fam: MeasureFamily, signs: np.ndarray) -> np.ndarray:
    weighted = fam.weights[:, None]
    positive = fam.membership @ (weighted * (signs > 0))
    negative = fam.membership @ (weighted * (signs < 0))
    half = 0.5 * fam.totals[:, None] * (1.0 + BISECTION_REL_TOL)
    return np.all((positive <= half) & (negative <= half), axis=0)


def brute_force_bisect(fam: MeasureFamily, D: int, *, max_points: int = 40) -> list[Arrangement]:
    if fam.dim != 2:
        raise PreconditionError("The brute-force oracle works in the plane only")
    if D not in (1, 2):
        raise PreconditionError(f"The brute-force oracle handles one or two lines, got D={D}")
    if len(fam.points) > max_points:
        raise EnumerationLimitError(
            f"{len(fam.points)} support points exceed the oracle limit {max_points}"
        )

    lines = candidate_lines(fam.points)
    values = lines[:, 0] + fam.points @ lines[:, 1:].T
    signs = np.where(np.abs(values) <= ZERO_TOL, 0, np.sign(values)).astype(np.int8)

    hits: list[tuple[int, ...]] = []
    if D == 1:
        hits = [(int(index),) for index in np.flatnonzero(_bisected_columns(fam, signs))]
    else:
        for first in range(len(lines) - 1):
            products = signs[:, first : first + 1] * signs[:, first + 1 :]
            for offset in np.flatnonzero(_bisected_columns(fam, products)):
                hits.append((first, first + 1 + int(offset)))

    found: dict[tuple[float, ...], Arrangement] = {}
    for combo in hits:
        arrangement = Arrangement.from_matrix(lines[list(combo)])
        if is_degenerate(arrangement) or not is_bisecting(fam, arrangement):
            continue
        canonical = canonicalize(arrangement)
        key = tuple(np.round(canonical.matrix(), DEDUP_DECIMALS).ravel().tolist())
        found.setdefault(key, canonical)
    logger.debug(
        "Brute-force oracle finished", candidates=len(lines), hits=len(hits), distinct=len(found)
    )
    return list(found.values())
