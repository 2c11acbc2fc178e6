"""Smooth surrogate of the residual map: each sign factor replaced by tanh(A_j / tau)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hyperbisect.errors import DimensionMismatchError, PreconditionError
from hyperbisect.geometry import Arrangement
from hyperbisect.measures.discrete import MeasureFamily, ResidualVector


@dataclass(frozen=True)
class MollifierConfig:
    tau: float

    def __post_init__(self) -> None:
        if not self.tau > 0:
            raise PreconditionError(f"tau must be positive, got {self.tau!r}")


def homogenize(points: np.ndarray) -> np.ndarray:
    """Prepend a column of ones so that A(p) = coeffs @ [1, p]."""

    return np.hstack([np.ones((points.shape[0], 1)), points])


def mollified_terms(
    homogenized: np.ndarray,
    scaled_weights: np.ndarray,
    membership: np.ndarray,
    coeffs: np.ndarray,
    tau: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Values and ambient Jacobian of the mollified residual.

    ``scaled_weights`` are point weights divided by the total of their measure and
    ``membership`` is the k x m indicator matrix; the Jacobian is k x D(n+1), block j
    holding the derivatives with respect to hyperplane j's raw coefficients.
    """

    if tau <= 0:
        raise PreconditionError(f"tau must be positive, got {tau!r}")
    matrix = np.atleast_2d(coeffs)
    count, width = matrix.shape
    factors = np.tanh(homogenized @ matrix.T / tau)
    values = membership @ (scaled_weights * np.prod(factors, axis=1))
    jacobian = np.empty((membership.shape[0], count * width))
    for j in range(count):
        others = np.prod(np.delete(factors, j, axis=1), axis=1)
        slope = scaled_weights * others * (1.0 - factors[:, j] ** 2) / tau
        jacobian[:, j * width : (j + 1) * width] = membership @ (slope[:, None] * homogenized)
    return values, jacobian


def tangent_project(jacobian: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Restrict each hyperplane block to the tangent space of its sphere factor."""

    matrix = np.atleast_2d(coeffs)
    width = matrix.shape[1]
    projected = np.empty_like(jacobian)
    for j, row in enumerate(matrix):
        unit = row / np.linalg.norm(row)
        block = jacobian[:, j * width : (j + 1) * width]
        projected[:, j * width : (j + 1) * width] = block - np.outer(block @ unit, unit)
    return projected


def evaluate_mollified(
    fam: MeasureFamily, coeffs: np.ndarray, tau: float
) -> tuple[np.ndarray, np.ndarray]:
    """Raw-coefficient evaluation (no renormalization) returning values and the ambient Jacobian."""

    matrix = np.atleast_2d(np.asarray(coeffs, dtype=float))
    if matrix.shape[1] != fam.dim + 1:
        raise DimensionMismatchError(f"Coefficient rows must have length {fam.dim + 1}")
    scaled = fam.weights / fam.totals[fam.labels]
    return mollified_terms(homogenize(fam.points), scaled, fam.membership, matrix, tau)


def mollified_residual(
    fam: MeasureFamily, arr: Arrangement, cfg: MollifierConfig
) -> tuple[ResidualVector, np.ndarray]:
    """Mollified residual and its Jacobian restricted to the tangent spaces of (S^n)^D."""

    if fam.dim != arr.dim:
        raise DimensionMismatchError(f"Family lives in R^{fam.dim}, arrangement in R^{arr.dim}")
    matrix = arr.matrix()
    values, jacobian = evaluate_mollified(fam, matrix, cfg.tau)
    clipped = np.clip(values, -1.0, 1.0)
    return ResidualVector(tuple(clipped.tolist())), tangent_project(jacobian, matrix)
