"""Exact continuation by support-point incidences.

On discrete measures the exact residual is piecewise constant, so a bisecting
arrangement of the deformed family is pinned by the support points its hyperplanes
pass through. The tracker follows the solution curve of the deformation edge by edge.
On a sweep edge every hyperplane passes through n points and t moves with them. On a
turn edge t is frozen: one hyperplane carries n + 1 points and another rotates about
n - 1 points. An edge ends when a free support point reaches a moving hyperplane. At
that vertex exactly two ways of releasing one incidence keep every measure bisected,
and the tracker leaves by the one it did not arrive on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from loguru import logger
from numpy.polynomial import polynomial as poly

from hyperbisect.geometry import Arrangement, is_degenerate
from hyperbisect.measures import MeasureFamily
from hyperbisect.measures.discrete import BISECTION_REL_TOL

INCIDENCE_TOL = 1e-9
EVENT_EPS = 1e-12
RELEASE_EPS = 1e-8
REAL_ROOT_TOL = 1e-9
TANGENCY_TOL = 1e-13
DEFAULT_MAX_PIVOTS = 10_000


@dataclass(frozen=True)
class Release:
    """Drop ``point`` from hyperplane ``plane`` so that it ends up on side ``side``."""

    plane: int
    point: int
    side: int


@dataclass(frozen=True)
class _Event:
    distance: float
    plane: int
    point: int


@dataclass
class TrackResult:
    matrix: np.ndarray
    t: float
    status: str
    sweeps: int = 0
    turns: int = 0

    @property
    def reached(self) -> bool:
        return self.status == "reached"


def cofactors(rows: np.ndarray) -> np.ndarray:
    """Vector c with c . h = det([rows; h]) for ``rows`` of shape (..., n, n + 1)."""

    count = rows.shape[-2]
    columns = [
        (-1.0) ** (count + index) * np.linalg.det(np.delete(rows, index, axis=-1))
        for index in range(count + 1)
    ]
    return np.stack(columns, axis=-1)


def _unit(vector: np.ndarray) -> np.ndarray:
    return vector / np.linalg.norm(vector)


def real_roots(coefficients: np.ndarray) -> np.ndarray:
    """Real roots of every column polynomial, lowest degree first; NaN pads each row."""

    degree, count = coefficients.shape[0] - 1, coefficients.shape[1]
    roots = np.full((count, degree), np.nan)
    scale = np.abs(coefficients).max(axis=0)
    lead = coefficients[-1]
    regular = np.abs(lead) > 1e-12 * scale
    if regular.any():
        monic = coefficients[:-1, regular] / lead[regular]
        companion = np.zeros((int(regular.sum()), degree, degree))
        companion[:, np.arange(1, degree), np.arange(degree - 1)] = 1.0
        companion[:, :, -1] = -monic.T
        values = np.linalg.eigvals(companion)
        roots[regular] = np.where(np.abs(values.imag) <= REAL_ROOT_TOL, values.real, np.nan)
    for column in np.flatnonzero(~regular & (scale > 0)):
        series = poly.polytrim(coefficients[:, column], 1e-12 * scale[column])
        if len(series) < 2:
            continue
        values = poly.polyroots(series)
        real = values.real[np.abs(values.imag) <= REAL_ROOT_TOL]
        roots[column, : real.size] = real
    return roots


class IncidenceTracker:
    """Walk from a bisecting arrangement of the time-1 family down to t = 0.

    Support points move affinely, x(t) = x + t * (endpoint - x), so the signed volume
    spanned by a hyperplane's anchors and a free point is a polynomial of degree n in
    t and crossing times are its real roots.
    """

    def __init__(
        self,
        fam: MeasureFamily,
        endpoint: np.ndarray,
        *,
        max_pivots: int = DEFAULT_MAX_PIVOTS,
        degeneracy_tol: float = 1e-9,
    ) -> None:
        if endpoint.shape != fam.points.shape:
            raise ValueError(f"Endpoint shape {endpoint.shape} differs from {fam.points.shape}")
        self.fam = fam
        self.dim = fam.dim
        self.base = fam.points
        self.velocity = endpoint - fam.points
        self.half = 0.5 * fam.totals * (1.0 + BISECTION_REL_TOL)
        self.max_pivots = max_pivots
        self.degeneracy_tol = degeneracy_tol
        count = self.dim + 1
        self.nodes = 0.5 - 0.5 * np.cos(np.pi * (2 * np.arange(count) + 1) / (2 * count))
        self.vandermonde = np.vander(self.nodes, count, increasing=True)
        self.node_lifts = [self.lifted(node) for node in self.nodes]

    def lifted(self, t: float) -> np.ndarray:
        points = self.base + t * self.velocity
        return np.hstack([np.ones((points.shape[0], 1)), points])

    def track(self, seed: Arrangement) -> TrackResult:
        matrix = seed.matrix()
        anchors = self._seed_incidences(matrix)
        if anchors is None:
            return TrackResult(matrix, 1.0, "seed_incidence")

        t, direction = 1.0, -1.0
        released: tuple[int, int] | None = None
        turning: Release | None = None
        full = -1
        sweeps = turns = 0
        for _ in range(self.max_pivots):
            if turning is None:
                sweeps += 1
                event = self._next_sweep_event(t, anchors, direction, released)
                boundary = t if direction < 0 else 1.0 - t
                if event is None or event.distance >= boundary:
                    end = 0.0 if direction < 0 else 1.0
                    status = "reached" if end == 0.0 else "returned"
                    return TrackResult(self._sweep_matrix(anchors, end), end, status, sweeps, turns)
                middle = t + direction * event.distance / 2
                lifted = self.lifted(middle)
                side = int(np.sign(cofactors(lifted[anchors[event.plane]]) @ lifted[event.point]))
                t += direction * event.distance
                matrix = self._sweep_matrix(anchors, t)
                plane, point, full = event.plane, event.point, event.plane
            else:
                turns += 1
                outcome = self._turn(t, anchors, matrix, turning)
                if outcome is None:
                    return TrackResult(matrix, t, "stalled", sweeps, turns)
                row, point, side = outcome
                plane = turning.plane
                matrix = matrix.copy()
                matrix[plane] = row
            anchors[plane] = anchors[plane] + [point]

            if side == 0:
                return TrackResult(matrix, t, "stalled", sweeps, turns)
            if is_degenerate(Arrangement.from_matrix(matrix), self.degeneracy_tol):
                return TrackResult(matrix, t, "degenerate", sweeps, turns)

            arrival = Release(plane, point, side)
            turning, leaving = None, None
            for release in self._releases(t, anchors, matrix, arrival):
                if release.plane == full:
                    rows = [index for index in anchors[full] if index != release.point]
                    heading = self._sweep_direction(t, rows, release, matrix[full])
                    if heading is None:
                        continue
                    anchors[full] = rows
                    direction, released = heading, (full, release.point)
                else:
                    anchors[release.plane] = [
                        index for index in anchors[release.plane] if index != release.point
                    ]
                    turning = release
                leaving = release
                break
            if leaving is None:
                logger.debug("No exit at vertex", t=t, arrival=arrival)
                return TrackResult(matrix, t, "stalled", sweeps, turns)
        return TrackResult(matrix, t, "max_pivots", sweeps, turns)

    def _seed_incidences(self, matrix: np.ndarray) -> list[list[int]] | None:
        values = np.abs(self.lifted(1.0) @ matrix.T)
        if values.shape[0] <= self.dim:
            return None
        anchors = []
        for plane in range(matrix.shape[0]):
            order = np.argsort(values[:, plane], kind="stable")
            if values[order[self.dim - 1], plane] > INCIDENCE_TOL:
                return None
            if values[order[self.dim], plane] <= INCIDENCE_TOL:
                return None
            anchors.append(sorted(int(index) for index in order[: self.dim]))
        if len({index for rows in anchors for index in rows}) != self.dim * len(anchors):
            return None
        return anchors

    def _free(self, anchors: list[list[int]]) -> np.ndarray:
        taken = np.zeros(self.base.shape[0], dtype=bool)
        for rows in anchors:
            taken[rows] = True
        return np.flatnonzero(~taken)

    def _crossing_polynomials(self, rows: list[int], points: np.ndarray) -> np.ndarray:
        """Coefficients of det([anchors(t); point(t)]), low degree first, one column a point."""

        values = np.stack([lift[points] @ cofactors(lift[rows]) for lift in self.node_lifts])
        return np.linalg.solve(self.vandermonde, values)

    def _next_sweep_event(
        self,
        t: float,
        anchors: list[list[int]],
        direction: float,
        released: tuple[int, int] | None,
    ) -> _Event | None:
        free = self._free(anchors)
        best: _Event | None = None
        for plane, rows in enumerate(anchors):
            roots = real_roots(self._crossing_polynomials(rows, free))
            floors = np.full(free.size, EVENT_EPS)
            if released is not None and released[0] == plane:
                floors[free == released[1]] = RELEASE_EPS
            with np.errstate(invalid="ignore"):
                distances = direction * (roots - t)
                distances[~(distances > floors[:, None])] = np.inf
            if not np.isfinite(distances).any():
                continue
            row, _ = np.unravel_index(int(np.argmin(distances)), distances.shape)
            nearest = float(distances.min())
            if best is None or nearest < best.distance:
                best = _Event(nearest, plane, int(free[row]))
        return best

    def _sweep_matrix(self, anchors: list[list[int]], t: float) -> np.ndarray:
        lifted = self.lifted(t)
        return np.stack([_unit(cofactors(lifted[rows])) for rows in anchors])

    def _sweep_direction(
        self, t: float, rows: list[int], release: Release, reference: np.ndarray
    ) -> float | None:
        """Direction of t in which the released point leaves the hyperplane on its side."""

        series = self._crossing_polynomials(rows, np.array([release.point]))[:, 0]
        slope = float(poly.polyval(t, poly.polyder(series)))
        orientation = float(np.sign(cofactors(self.lifted(t)[rows]) @ reference))
        if abs(slope) <= TANGENCY_TOL * max(1.0, float(np.abs(series).max())) or orientation == 0:
            return None
        return float(release.side * orientation * np.sign(slope))

    def _pencil(self, rows: np.ndarray, current: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Orthonormal pair spanning the hyperplanes through ``rows``, the first one ``current``."""

        if len(rows) == 0:
            basis = np.eye(current.shape[0])
        else:
            basis = np.linalg.svd(rows)[2][len(rows) :]
        start = _unit(basis.T @ (basis @ current))
        remainder = basis - np.outer(basis @ start, start)
        other = remainder[int(np.argmax(np.linalg.norm(remainder, axis=1)))]
        return start, _unit(other)

    def _turn(
        self, t: float, anchors: list[list[int]], matrix: np.ndarray, release: Release
    ) -> tuple[np.ndarray, int, int] | None:
        lifted = self.lifted(t)
        start, other = self._pencil(lifted[anchors[release.plane]], matrix[release.plane])
        lean = float(other @ lifted[release.point])
        if abs(lean) <= TANGENCY_TOL:
            return None
        if np.sign(lean) != release.side:
            other = -other
        free = self._free(anchors)
        free = free[free != release.point]
        if free.size == 0:
            return None
        angles = np.mod(np.arctan2(-(lifted[free] @ start), lifted[free] @ other), np.pi)
        angles[angles <= EVENT_EPS] = np.inf
        index = int(np.argmin(angles))
        angle = float(angles[index])
        if not np.isfinite(angle):
            return None
        point = int(free[index])
        halfway = np.cos(angle / 2) * start + np.sin(angle / 2) * other
        side = int(np.sign(halfway @ lifted[point]))
        return np.cos(angle) * start + np.sin(angle) * other, point, side

    def _balanced(self, products: np.ndarray) -> bool:
        weights, labels, k = self.fam.weights, self.fam.labels, self.fam.k
        positive = np.bincount(labels, weights=weights * (products > 0), minlength=k)
        negative = np.bincount(labels, weights=weights * (products < 0), minlength=k)
        return bool(np.all(positive <= self.half) and np.all(negative <= self.half))

    def _releases(
        self, t: float, anchors: list[list[int]], matrix: np.ndarray, arrival: Release
    ) -> list[Release]:
        """Every release that keeps all measures bisected, except undoing the arrival."""

        factors = np.sign(self.lifted(t) @ matrix.T).astype(int)
        for plane, rows in enumerate(anchors):
            factors[rows, plane] = 0
        products = np.prod(factors, axis=1)
        valid = []
        for plane, rows in enumerate(anchors):
            for point in rows:
                others = int(np.prod(np.delete(factors[point], plane)))
                for side in (1, -1):
                    release = Release(plane, point, side)
                    if release == arrival:
                        continue
                    trial = products.copy()
                    trial[point] = side * others
                    if self._balanced(trial):
                        valid.append(release)
        return valid
