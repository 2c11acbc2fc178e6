"""Finite weighted point measures, families of them, and exact bisection residuals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from hyperbisect.errors import DimensionMismatchError
from hyperbisect.geometry import Arrangement, product_signs

BISECTION_REL_TOL = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Weighted point set in R^n; ``weights`` defaults to unit masses."""

    points: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=float)
        if points.ndim != 2 or points.shape[0] == 0 or points.shape[1] == 0:
            raise ValueError(f"points must be a non-empty (m, n) array, got shape {points.shape}")
        if self.weights is None:
            weights = np.ones(points.shape[0])
        else:
            weights = np.array(self.weights, dtype=float).ravel()
        if weights.shape[0] != points.shape[0]:
            raise ValueError(f"{points.shape[0]} points but {weights.shape[0]} weights")
        if not np.all(np.isfinite(points)) or not np.all(np.isfinite(weights)):
            raise ValueError("points and weights must be finite")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "weights", _frozen(weights))

    @classmethod
    def uniform(cls, points: Sequence[Sequence[float]] | np.ndarray) -> DiscreteMeasure:
        """Equal-weight measure 1/N * sum of deltas."""

        array = np.array(points, dtype=float)
        return cls(array, np.full(array.shape[0], 1.0 / array.shape[0]))

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    @property
    def total_weight(self) -> float:
        return math.fsum(self.weights.tolist())

    @property
    def oddly_supported(self) -> bool:
        """Equal weights on an odd number of points."""

        return self.size % 2 == 1 and bool(np.all(self.weights == self.weights[0]))

    def with_points(self, points: np.ndarray) -> DiscreteMeasure:
        return DiscreteMeasure(points, self.weights)


@dataclass(frozen=True, eq=False)
class MeasureFamily:
    """k measures in a common R^n, with stacked support arrays cached for vector work."""

    measures: tuple[DiscreteMeasure, ...]

    def __post_init__(self) -> None:
        measures = tuple(self.measures)
        if not measures:
            raise ValueError("A family needs at least one measure")
        dims = {measure.dim for measure in measures}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Measures disagree on dimension: {sorted(dims)}")
        object.__setattr__(self, "measures", measures)
        points = np.vstack([measure.points for measure in measures])
        weights = np.concatenate([measure.weights for measure in measures])
        labels = np.concatenate(
            [np.full(measure.size, index) for index, measure in enumerate(measures)]
        )
        totals = np.asarray([measure.total_weight for measure in measures])
        membership = np.zeros((len(measures), points.shape[0]))
        membership[labels, np.arange(points.shape[0])] = 1.0
        object.__setattr__(self, "_points", _frozen(points))
        object.__setattr__(self, "_weights", _frozen(weights))
        object.__setattr__(self, "_labels", _frozen(labels))
        object.__setattr__(self, "_totals", _frozen(totals))
        object.__setattr__(self, "_membership", _frozen(membership))

    @property
    def dim(self) -> int:
        return self.measures[0].dim

    @property
    def k(self) -> int:
        return len(self.measures)

    def __len__(self) -> int:
        return len(self.measures)

    def __iter__(self) -> Iterator[DiscreteMeasure]:
        return iter(self.measures)

    def __getitem__(self, index: int) -> DiscreteMeasure:
        return self.measures[index]

    @property
    def points(self) -> np.ndarray:
        """All support points stacked measure by measure."""

        return self._points  # type: ignore[attr-defined]

    @property
    def weights(self) -> np.ndarray:
        return self._weights  # type: ignore[attr-defined]

    @property
    def labels(self) -> np.ndarray:
        """Measure index of each stacked point."""

        return self._labels  # type: ignore[attr-defined]

    @property
    def totals(self) -> np.ndarray:
        return self._totals  # type: ignore[attr-defined]

    @property
    def membership(self) -> np.ndarray:
        """k x m indicator matrix of which measure owns each stacked point."""

        return self._membership  # type: ignore[attr-defined]

    def with_points(self, points: np.ndarray) -> MeasureFamily:
        """Same weights and labels on new stacked positions."""

        array = np.asarray(points, dtype=float)
        if array.shape != self.points.shape:
            raise DimensionMismatchError(
                f"Expected stacked points of shape {self.points.shape}, got {array.shape}"
            )
        offsets = np.cumsum([0] + [measure.size for measure in self.measures])
        return MeasureFamily(
            tuple(
                measure.with_points(array[offsets[index] : offsets[index + 1]])
                for index, measure in enumerate(self.measures)
            )
        )

    def subfamily(self, indices: Sequence[int]) -> MeasureFamily:
        return MeasureFamily(tuple(self.measures[index] for index in indices))

    def project(self, dim: int) -> MeasureFamily:
        """Keep the first ``dim`` coordinates of every support point."""

        if not 1 <= dim <= self.dim:
            raise DimensionMismatchError(f"Cannot project R^{self.dim} onto R^{dim}")
        return MeasureFamily(
            tuple(DiscreteMeasure(m.points[:, :dim], m.weights) for m in self.measures)
        )


@dataclass(frozen=True)
class ResidualVector:
    """Per-measure signed mass difference mu{P>0} - mu{P<0}, normalized by total mass."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(value) for value in self.values)
        if any(not -1.0 <= value <= 1.0 for value in values):
            raise ValueError(f"Residual entries must lie in [-1, 1]: {values}")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @property
    def max_abs(self) -> float:
        return max(abs(value) for value in self.values)


@dataclass(frozen=True)
class SideMasses:
    positive: float
    negative: float
    on_cut: float
    total: float

    def bisected(self, rel_tol: float = BISECTION_REL_TOL) -> bool:
        half = 0.5 * self.total * (1.0 + rel_tol)
        return self.positive <= half and self.negative <= half


def _check_dims(fam: MeasureFamily, arr: Arrangement) -> None:
    if fam.dim != arr.dim:
        raise DimensionMismatchError(f"Family lives in R^{fam.dim}, arrangement in R^{arr.dim}")


def side_masses(fam: MeasureFamily, arr: Arrangement) -> list[SideMasses]:
    """Mass of each measure on the open positive side, open negative side and the zero set of P."""

    _check_dims(fam, arr)
    signs = product_signs(arr, fam.points)
    masses = []
    for index, measure in enumerate(fam.measures):
        local = signs[fam.labels == index]
        weights = measure.weights
        masses.append(
            SideMasses(
                positive=math.fsum(weights[local > 0].tolist()),
                negative=math.fsum(weights[local < 0].tolist()),
                on_cut=math.fsum(weights[local == 0].tolist()),
                total=measure.total_weight,
            )
        )
    return masses


def residual(fam: MeasureFamily, arr: Arrangement) -> ResidualVector:
    """Exact residual; on-cut mass counts to neither side."""

    values = [
        min(1.0, max(-1.0, (masses.positive - masses.negative) / masses.total))
        for masses in side_masses(fam, arr)
    ]
    return ResidualVector(tuple(values))


def is_bisecting(fam: MeasureFamily, arr: Arrangement) -> bool:
    """Each measure carries at most half its mass on either open side of P."""

    return all(masses.bisected() for masses in side_masses(fam, arr))
