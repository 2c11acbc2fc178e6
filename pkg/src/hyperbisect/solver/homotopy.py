"""Continuation from a well-separated deformation of the family back to the family itself."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np
from loguru import logger
from scipy.optimize import linear_sum_assignment

from hyperbisect.combinatorics import BlockPartition, enumerate_partitions, first_partition
from hyperbisect.errors import (
    DegenerateSpanError,
    NoBisectingCutError,
    PreconditionError,
    SeparationError,
)
from hyperbisect.geometry import (
    Arrangement,
    arrangements_close,
    canonicalize,
    hyperplane_through,
    is_degenerate,
)
from hyperbisect.measures import MeasureFamily, is_bisecting, residual
from hyperbisect.measures.mollifier import homogenize, mollified_terms, tangent_project
from hyperbisect.sandwich import (
    centroid_certificate,
    certificate_radius_bound,
    separated_certificate,
)
from hyperbisect.settings import Settings, get_settings
from hyperbisect.solver.separated import hyperplane_count, solve_separated
from hyperbisect.solver.tracking import DEFAULT_MAX_PIVOTS, IncidenceTracker

CENTER_JITTER = 1e-3
ALPHA_FRACTION = 0.25
SHRINK_MARGIN = 0.9
MAX_TANGENT_STEP = 0.5
POLISH_CANDIDATES = 3
POLISH_LIMIT = 4096
CORRECTORS = ("pivot", "newton")


@dataclass(frozen=True)
class TauSchedule:
    """tau(t) = max(floor, slope * alpha * (1 - t) + floor)."""

    alpha: float
    slope: float = 0.1
    floor: float = 1e-4

    def __call__(self, t: float) -> float:
        return max(self.floor, self.slope * self.alpha * (1.0 - t) + self.floor)


@dataclass(frozen=True)
class ContinuationConfig:
    """Path-tracking knobs.

    ``corrector="pivot"`` follows support-point incidences exactly and only reads
    ``max_pivots`` and ``degeneracy_tol``. ``corrector="newton"`` marches in t with a
    damped Newton corrector on the smoothed residual and uses the step and tau knobs.
    """

    corrector: str = "pivot"
    max_pivots: int = DEFAULT_MAX_PIVOTS
    t_step_init: float = 0.05
    t_step_min: float = 1e-5
    newton_tol: float = 1e-10
    newton_max_iter: int = 50
    tau_of_t: Callable[[float], float] | None = None
    degeneracy_tol: float = 1e-9
    anneal_factor: float = 1e-3

    def __post_init__(self) -> None:
        if self.corrector not in CORRECTORS:
            raise ValueError(f"corrector must be one of {CORRECTORS}, got {self.corrector!r}")
        for name in ("t_step_init", "t_step_min", "newton_tol", "degeneracy_tol", "anneal_factor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.t_step_min >= self.t_step_init:
            raise ValueError("t_step_min must be smaller than t_step_init")
        if self.newton_max_iter < 1:
            raise ValueError("newton_max_iter must be at least 1")
        if self.max_pivots < 1:
            raise ValueError("max_pivots must be at least 1")

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> ContinuationConfig:
        settings = settings or get_settings()
        return cls(
            corrector=settings.corrector,
            max_pivots=settings.max_pivots,
            t_step_init=settings.t_step_init,
            t_step_min=settings.t_step_min,
            newton_tol=settings.newton_tol,
            newton_max_iter=settings.newton_max_iter,
            degeneracy_tol=settings.degeneracy_tol,
        )


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Affine per-point paths v -> (1 - t) v + t (b_i + s (v - b_i)) into balls around centers."""

    family: MeasureFamily
    centers: np.ndarray
    shrink: float
    alpha: float
    stationary: bool = False

    def positions(self, t: float) -> np.ndarray:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {t}")
        points = self.family.points
        anchors = self.centers[self.family.labels]
        return (1.0 - t) * points + t * (anchors + self.shrink * (points - anchors))

    def at(self, t: float) -> MeasureFamily:
        if t == 0.0 or self.stationary:
            return self.family
        return self.family.with_points(self.positions(t))


@dataclass
class SolveReport:
    arrangement: Arrangement | None
    verified: bool
    residual_max: float
    steps: int
    seed_partition: BlockPartition
    status: str = "verified"
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verified and self.arrangement is None:
            raise ValueError("A verified report needs an arrangement")


class _Correction(NamedTuple):
    matrix: np.ndarray | None
    residual: float
    iterations: int
    reason: str


def _default_centers(fam: MeasureFamily, seed: int) -> np.ndarray:
    points = fam.points
    low, high = points.min(axis=0), points.max(axis=0)
    span = float((high - low).max()) or 1.0
    parameters = np.linspace(-1.0, 1.0, fam.k) if fam.k > 1 else np.zeros(1)
    curve = np.stack([parameters**power for power in range(1, fam.dim + 1)], axis=1)
    centers = 0.5 * (low + high) + 0.5 * span * curve
    if fam.k > 1:
        spacing = min(float(np.linalg.norm(a - b)) for a, b in combinations(centers, 2))
        rng = np.random.default_rng(seed)
        centers = centers + rng.normal(scale=CENTER_JITTER * spacing, size=centers.shape)
    return centers


def build_trajectory(
    fam: MeasureFamily,
    centers: Sequence[Sequence[float]] | np.ndarray | None = None,
    *,
    seed: int = 0,
) -> Trajectory:
    """Deformation whose time-1 family sits in certified balls.

    The trajectory is constant when the input is already separated around its centroids.
    """

    hyperplane_count(fam)
    if centers is None:
        certificate = centroid_certificate(fam)
        if certificate.holds_for(fam):
            logger.debug("Family already separated around its centroids", radius=certificate.radius)
            return Trajectory(fam, certificate.centers, 1.0, certificate.radius, stationary=True)
        center_array = _default_centers(fam, seed)
    else:
        center_array = np.atleast_2d(np.asarray(centers, dtype=float))
        if center_array.shape != (fam.k, fam.dim):
            raise PreconditionError(
                f"Expected {fam.k} centers in R^{fam.dim}, got shape {center_array.shape}"
            )

    bound = certificate_radius_bound(center_array)
    if math.isinf(bound):
        bound = max(1.0, float(np.abs(fam.points).max()))
    alpha = ALPHA_FRACTION * bound
    if not alpha > 0:
        raise SeparationError("Centers are affinely degenerate; no separating radius exists")
    spread = max(
        float(np.linalg.norm(measure.points - center, axis=1).max())
        for center, measure in zip(center_array, fam)
    )
    shrink = min(1.0, SHRINK_MARGIN * alpha / spread) if spread > 0 else 1.0
    trajectory = Trajectory(fam, center_array, shrink, alpha)
    if not separated_certificate(trajectory.at(1.0), center_array, alpha):
        raise SeparationError("Time-1 family fails the separation certificate; rescale the input")
    logger.debug("Built trajectory", alpha=alpha, shrink=shrink, measures=fam.k)
    return trajectory


def _normalize_rows(matrix: np.ndarray) -> np.ndarray:
    return matrix / np.linalg.norm(matrix, axis=1, keepdims=True)


def _correct(
    fam: MeasureFamily, start: np.ndarray, tau: float, cfg: ContinuationConfig
) -> _Correction:
    """Damped Newton on the mollified residual, tangent steps followed by renormalization."""

    homogenized = homogenize(fam.points)
    scaled = fam.weights / fam.totals[fam.labels]
    membership = fam.membership
    current = _normalize_rows(start)
    values, jacobian = mollified_terms(homogenized, scaled, membership, current, tau)
    norm = float(np.abs(values).max())
    for iteration in range(cfg.newton_max_iter):
        if norm <= cfg.newton_tol:
            return _Correction(current, norm, iteration, "converged")
        projected = tangent_project(jacobian, current)
        step = np.linalg.lstsq(projected, -values, rcond=None)[0].reshape(current.shape)
        largest = float(np.linalg.norm(step, axis=1).max())
        if largest > MAX_TANGENT_STEP:
            step *= MAX_TANGENT_STEP / largest
        damping = 1.0
        while damping >= 1.0 / 64:
            candidate = _normalize_rows(current + damping * step)
            trial_values, trial_jacobian = mollified_terms(
                homogenized, scaled, membership, candidate, tau
            )
            trial_norm = float(np.abs(trial_values).max())
            if trial_norm <= cfg.newton_tol or trial_norm < (1.0 - 1e-4 * damping) * norm:
                break
            damping /= 2
        else:
            return _Correction(None, norm, iteration, "stalled")
        if is_degenerate(Arrangement.from_matrix(candidate), cfg.degeneracy_tol):
            return _Correction(None, trial_norm, iteration, "degenerate")
        current, values, jacobian, norm = candidate, trial_values, trial_jacobian, trial_norm
    if norm <= cfg.newton_tol:
        return _Correction(current, norm, cfg.newton_max_iter, "converged")
    return _Correction(None, norm, cfg.newton_max_iter, "max_iter")


def polish(
    fam: MeasureFamily,
    arr: Arrangement,
    *,
    degeneracy_tol: float = 1e-9,
    candidates: int = POLISH_CANDIDATES,
) -> Arrangement | None:
    """Snap hyperplanes onto support points: n measures per hyperplane, nearest points first."""

    n, D = fam.dim, len(arr)
    if fam.k != n * D:
        return None
    matrix = arr.matrix()
    offsets = np.abs(matrix[:, 0] + fam.points @ matrix[:, 1:].T)
    distances = offsets / np.linalg.norm(matrix[:, 1:], axis=1)
    cost = np.stack([distances[fam.labels == index].min(axis=0) for index in range(fam.k)])
    measure_rows, slots = linear_sum_assignment(np.repeat(cost, n, axis=1))
    owners: list[list[int]] = [[] for _ in range(D)]
    for measure, slot in zip(measure_rows, slots):
        owners[slot // n].append(int(measure))

    per_measure = max(1, candidates)
    while per_measure > 1 and per_measure**fam.k > POLISH_LIMIT:
        per_measure -= 1
    plane_options: list[list[Any]] = []
    for plane, measures in enumerate(owners):
        nearest = []
        for measure in measures:
            local = fam[measure].points
            local_distances = distances[fam.labels == measure, plane]
            order = np.argsort(local_distances, kind="stable")[:per_measure]
            nearest.append([local[index] for index in order])
        options = []
        for anchors in product(*nearest):
            try:
                options.append(hyperplane_through(np.stack(anchors)))
            except DegenerateSpanError:
                continue
        plane_options.append(options)

    for choice in product(*plane_options):
        candidate = Arrangement(tuple(choice))
        if is_bisecting(fam, candidate) and not is_degenerate(candidate, degeneracy_tol):
            return candidate
    return None


def _finalize(
    fam: MeasureFamily,
    arrangement: Arrangement,
    cfg: ContinuationConfig,
    part: BlockPartition,
    steps: int,
    diagnostics: dict[str, Any],
) -> SolveReport:
    verified = is_bisecting(fam, arrangement) and not is_degenerate(
        arrangement, cfg.degeneracy_tol
    )
    if not verified:
        snapped = polish(fam, arrangement, degeneracy_tol=cfg.degeneracy_tol)
        if snapped is not None:
            arrangement, verified = snapped, True
            diagnostics["polished"] = True
    status = "verified" if verified else "unverified"
    max_abs = residual(fam, arrangement).max_abs
    return SolveReport(arrangement, verified, max_abs, steps, part, status, diagnostics)


def _lost(
    fam: MeasureFamily,
    matrix: np.ndarray,
    part: BlockPartition,
    steps: int,
    status: str,
    diagnostics: dict[str, Any],
) -> SolveReport:
    arrangement = Arrangement.from_matrix(matrix)
    logger.warning("Continuation path lost", partition=str(part), **diagnostics)
    max_abs = residual(fam, arrangement).max_abs
    return SolveReport(arrangement, False, max_abs, steps, part, status, diagnostics)


def _pivot_track(
    fam: MeasureFamily,
    trajectory: Trajectory,
    seed_arrangement: Arrangement,
    cfg: ContinuationConfig,
    part: BlockPartition,
) -> SolveReport:
    tracker = IncidenceTracker(
        fam,
        trajectory.positions(1.0),
        max_pivots=cfg.max_pivots,
        degeneracy_tol=cfg.degeneracy_tol,
    )
    result = tracker.track(seed_arrangement)
    steps = result.sweeps + result.turns
    diagnostics: dict[str, Any] = {
        "t_reached": result.t,
        "sweeps": result.sweeps,
        "turns": result.turns,
        "reason": result.status,
    }
    if not result.reached:
        status = "degenerate" if result.status == "degenerate" else "path_lost"
        return _lost(fam, result.matrix, part, steps, status, diagnostics)
    return _finalize(fam, Arrangement.from_matrix(result.matrix), cfg, part, steps, diagnostics)


def _newton_march(
    fam: MeasureFamily,
    trajectory: Trajectory,
    seed_arrangement: Arrangement,
    cfg: ContinuationConfig,
    part: BlockPartition,
) -> SolveReport:
    tau_of_t = cfg.tau_of_t or TauSchedule(trajectory.alpha)
    current = seed_arrangement.matrix()
    previous: tuple[np.ndarray, float] | None = None
    t, step, steps, rejections = 1.0, cfg.t_step_init, 0, 0
    while t > 0.0:
        t_next = max(0.0, t - step)
        family_t = trajectory.at(t_next)
        tau = tau_of_t(t_next)
        if previous is not None:
            prior, t_prior = previous
            guess = current + (current - prior) * (t_next - t) / (t - t_prior)
            correction = _correct(family_t, guess, tau, cfg)
            if correction.matrix is None:
                correction = _correct(family_t, current, tau, cfg)
        else:
            correction = _correct(family_t, current, tau, cfg)

        if correction.matrix is None:
            rejections += 1
            step /= 2
            logger.debug("Corrector rejected step", t=t_next, reason=correction.reason, step=step)
            if step < cfg.t_step_min:
                status = "degenerate" if correction.reason == "degenerate" else "path_lost"
                diagnostics = {
                    "t_reached": t,
                    "rejections": rejections,
                    "reason": correction.reason,
                }
                return _lost(fam, current, part, steps, status, diagnostics)
            continue

        previous = (current, t)
        current, t = correction.matrix, t_next
        steps += 1
        step = min(cfg.t_step_init, 2.0 * step)
        logger.debug(
            "Continuation step accepted",
            t=t,
            residual=correction.residual,
            iterations=correction.iterations,
        )

    tau_start = tau_of_t(0.0)
    tau = tau_start
    while tau > cfg.anneal_factor * tau_start:
        tau /= 2
        annealed = _correct(fam, current, tau, cfg)
        if annealed.matrix is None:
            break
        current = annealed.matrix

    diagnostics = {"t_reached": 0.0, "rejections": rejections}
    return _finalize(fam, Arrangement.from_matrix(current), cfg, part, steps, diagnostics)


def homotopy_solve(
    fam: MeasureFamily,
    cfg: ContinuationConfig | None = None,
    part: BlockPartition | None = None,
    *,
    seed: int = 0,
    trajectory: Trajectory | None = None,
) -> SolveReport:
    """Track the separated seed of ``part`` from t = 1 down to the input family at t = 0."""

    cfg = cfg or ContinuationConfig.from_settings()
    D = hyperplane_count(fam)
    part = part or first_partition(fam.dim, D)
    trajectory = trajectory or build_trajectory(fam, seed=seed)

    try:
        seed_arrangement = solve_separated(trajectory.at(1.0), part, check_separation=False)
    except (NoBisectingCutError, DegenerateSpanError) as exc:
        logger.warning("Seed construction failed", partition=str(part), error=str(exc))
        return SolveReport(None, False, math.inf, 0, part, "seed_failed", {"error": str(exc)})

    if trajectory.stationary:
        return _finalize(fam, seed_arrangement, cfg, part, 0, {"stationary": True})

    if cfg.corrector == "pivot":
        report = _pivot_track(fam, trajectory, seed_arrangement, cfg, part)
    else:
        report = _newton_march(fam, trajectory, seed_arrangement, cfg, part)
    logger.info(
        "Homotopy path finished",
        partition=str(part),
        corrector=cfg.corrector,
        steps=report.steps,
        status=report.status,
        residual=report.residual_max,
    )
    return report


def sweep_partitions(
    fam: MeasureFamily,
    cfg: ContinuationConfig | None = None,
    *,
    seed: int = 0,
    max_workers: int = 1,
    limit: int | None = None,
) -> list[SolveReport]:
    """One homotopy run per canonical partition, sharing a single trajectory."""

    cfg = cfg or ContinuationConfig.from_settings()
    D = hyperplane_count(fam)
    partitions = enumerate_partitions(fam.dim, D, limit=limit or get_settings().enumeration_limit)
    trajectory = build_trajectory(fam, seed=seed)

    def _run(part: BlockPartition) -> SolveReport:
        return homotopy_solve(fam, cfg, part, seed=seed, trajectory=trajectory)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(_run, partitions))
    else:
        reports = [_run(part) for part in partitions]

    distinct: list[Arrangement] = []
    merges = 0
    for report in reports:
        if not report.verified or report.arrangement is None:
            continue
        arrangement = canonicalize(report.arrangement)
        if any(arrangements_close(arrangement, other) for other in distinct):
            merges += 1
            report.diagnostics["merged"] = True
            continue
        distinct.append(arrangement)
    if merges:
        logger.warning("Partition seeds merged at t = 0", merges=merges, distinct=len(distinct))
    logger.info(
        "Partition sweep finished",
        partitions=len(reports),
        verified=sum(report.verified for report in reports),
        distinct=len(distinct),
    )
    return reports


def best_report(reports: Sequence[SolveReport]) -> SolveReport:
    """First verified report, otherwise the one with the smallest residual."""

    if not reports:
        raise ValueError("No reports to choose from")
    for report in reports:
        if report.verified:
            return report
    return min(reports, key=lambda report: report.residual_max)
