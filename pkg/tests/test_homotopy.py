"""Continuation solver tests."""

from itertools import combinations

import numpy as np
import pytest

from hyperbisect.combinatorics import first_partition
from hyperbisect.errors import PreconditionError
from hyperbisect.geometry import (
    Arrangement,
    Hyperplane,
    arrangements_close,
    canonicalize,
    is_degenerate,
)
from hyperbisect.measures import (
    DiscreteMeasure,
    MeasureFamily,
    is_bisecting,
    random_oddly_supported_family,
)
from hyperbisect.sandwich import (
    bisecting_candidates,
    cuts_coincide,
    ham_sandwich,
    separated_certificate,
    uniqueness_check,
)
from hyperbisect.settings import Settings
from hyperbisect.solver import (
    ContinuationConfig,
    SolveReport,
    TauSchedule,
    best_report,
    build_trajectory,
    homotopy_solve,
    polish,
    solve_separated,
    sweep_partitions,
)

HAM_PAIR = MeasureFamily(
    (
        DiscreteMeasure([[0.0, 0.0], [0.0, 1.0], [0.0, 2.0]]),
        DiscreteMeasure([[5.0, 0.1], [5.0, 1.0], [5.0, 2.1]]),
    )
)


def test_tau_schedule_decreases_to_floor() -> None:
    schedule = TauSchedule(alpha=1.0)
    assert schedule(0.0) == pytest.approx(0.1001)
    assert schedule(1.0) == pytest.approx(1e-4)
    assert schedule(0.25) > schedule(0.75)


def test_continuation_config_validation() -> None:
    with pytest.raises(ValueError):
        ContinuationConfig(t_step_init=0.01, t_step_min=0.1)
    with pytest.raises(ValueError):
        ContinuationConfig(newton_max_iter=0)
    with pytest.raises(ValueError):
        ContinuationConfig(newton_tol=0.0)
    with pytest.raises(ValueError):
        ContinuationConfig(corrector="secant")
    with pytest.raises(ValueError):
        ContinuationConfig(max_pivots=0)


def test_continuation_config_from_settings() -> None:
    settings = Settings(
        HYPERBISECT_T_STEP_INIT=0.1,
        HYPERBISECT_NEWTON_MAX_ITER=7,
        HYPERBISECT_CORRECTOR="newton",
        HYPERBISECT_MAX_PIVOTS=123,
    )
    cfg = ContinuationConfig.from_settings(settings)
    assert cfg.corrector == "newton"
    assert cfg.max_pivots == 123
    assert cfg.t_step_init == 0.1
    assert cfg.newton_max_iter == 7
    assert cfg.t_step_min == 1e-5


def test_solve_report_needs_arrangement_when_verified() -> None:
    with pytest.raises(ValueError):
        SolveReport(None, True, 0.0, 0, first_partition(2, 1))


def test_best_report_prefers_verified_then_smallest_residual() -> None:
    part = first_partition(2, 1)
    plane = Arrangement((Hyperplane((0.0, 1.0, 0.0)),))
    loose = SolveReport(plane, False, 0.6, 3, part, "unverified")
    closer = SolveReport(plane, False, 0.2, 3, part, "unverified")
    good = SolveReport(plane, True, 0.0, 3, part)
    assert best_report([loose, good, closer]) is good
    assert best_report([loose, closer]) is closer
    with pytest.raises(ValueError):
        best_report([])


def test_separated_family_gives_stationary_trajectory(clustered_square: MeasureFamily) -> None:
    trajectory = build_trajectory(clustered_square)
    assert trajectory.stationary
    assert trajectory.at(0.5) is clustered_square


def test_trajectory_ends_in_certified_balls() -> None:
    fam = random_oddly_supported_family(2, 4, 5, seed=3)
    trajectory = build_trajectory(fam, seed=1)
    assert not trajectory.stationary
    assert trajectory.at(0.0) is fam
    assert separated_certificate(trajectory.at(1.0), trajectory.centers, trajectory.alpha)
    midpoint = 0.5 * (trajectory.positions(0.0) + trajectory.positions(1.0))
    np.testing.assert_allclose(trajectory.positions(0.5), midpoint)
    with pytest.raises(ValueError):
        trajectory.positions(1.5)


def test_trajectory_argument_checks() -> None:
    with pytest.raises(PreconditionError):
        build_trajectory(random_oddly_supported_family(2, 3, 3, seed=0))
    with pytest.raises(PreconditionError):
        build_trajectory(random_oddly_supported_family(2, 4, 3, seed=0), np.zeros((3, 2)))


def test_stationary_solve_matches_separated(clustered_square: MeasureFamily) -> None:
    report = homotopy_solve(clustered_square, ContinuationConfig())
    assert report.verified
    assert report.status == "verified"
    assert report.steps == 0
    assert report.diagnostics["stationary"] is True
    expected = solve_separated(clustered_square, first_partition(2, 2))
    assert arrangements_close(canonicalize(report.arrangement), canonicalize(expected))


def test_polish_snaps_nearby_line_onto_support() -> None:
    tilted = Arrangement((Hyperplane.from_coeffs((-1.0, 0.001, 1.0)),))
    assert not is_bisecting(HAM_PAIR, tilted)
    snapped = polish(HAM_PAIR, tilted)
    assert snapped is not None
    assert cuts_coincide(snapped[0], Hyperplane.from_coeffs((-1.0, 0.0, 1.0)))


def test_polish_needs_matching_count() -> None:
    two_lines = Arrangement((Hyperplane((0.0, 1.0, 0.0)), Hyperplane((0.0, 0.0, 1.0))))
    assert polish(HAM_PAIR, two_lines) is None


def test_newton_corrector_reports_where_it_stopped() -> None:
    fam = random_oddly_supported_family(2, 2, 5, seed=4)
    cfg = ContinuationConfig(corrector="newton", t_step_init=0.1, newton_max_iter=30)
    report = homotopy_solve(fam, cfg, seed=2)
    assert report.arrangement is not None
    assert report.status in {"verified", "unverified", "path_lost", "degenerate"}
    assert 0.0 <= report.diagnostics["t_reached"] <= 1.0
    if report.status in {"verified", "unverified"}:
        assert report.diagnostics["t_reached"] == 0.0
    if report.verified:
        assert is_bisecting(fam, report.arrangement)
        assert not is_degenerate(report.arrangement)


def test_single_line_continuation_lands_on_a_ham_sandwich_cut() -> None:
    for seed in range(20):
        fam = random_oddly_supported_family(2, 2, 5, seed=seed)
        report = homotopy_solve(fam, ContinuationConfig(), seed=seed)
        assert report.verified, report.diagnostics
        assert report.diagnostics.get("t_reached", 0.0) == 0.0
        cut = report.arrangement[0]
        if uniqueness_check(fam):
            assert cuts_coincide(cut, ham_sandwich(fam))
        else:
            assert any(cuts_coincide(cut, other) for other in bisecting_candidates(fam))


def test_partition_sweep_solves_random_planar_pairs_of_lines() -> None:
    verified = 0
    for seed in range(20):
        fam = random_oddly_supported_family(2, 4, 11, seed=seed)
        reports = sweep_partitions(fam, ContinuationConfig(), seed=seed)
        assert len(reports) == 3
        best = best_report(reports)
        if best.verified:
            verified += 1
        for report in reports:
            if report.verified:
                assert is_bisecting(fam, report.arrangement)
                assert not is_degenerate(report.arrangement)
    assert verified >= 18


def test_sweep_finds_every_partition_of_separated_family(clustered_square: MeasureFamily) -> None:
    for workers in (1, 2):
        reports = sweep_partitions(clustered_square, ContinuationConfig(), max_workers=workers)
        assert len(reports) == 3
        assert all(report.verified for report in reports)
        canonical = [canonicalize(report.arrangement) for report in reports]
        assert not any(arrangements_close(a, b) for a, b in combinations(canonical, 2))
        assert not any(report.diagnostics.get("merged") for report in reports)
