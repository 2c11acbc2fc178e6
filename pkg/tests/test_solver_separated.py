"""Separated-family solver tests."""

import math

import numpy as np
import pytest

from hyperbisect.combinatorics import BlockPartition
from hyperbisect.errors import EnumerationLimitError, PreconditionError, SeparationError
from hyperbisect.geometry import Arrangement, Hyperplane, arrangements_close, is_degenerate
from hyperbisect.measures import (
    DiscreteMeasure,
    MeasureFamily,
    clustered_family,
    delta_family,
    is_bisecting,
    lower_bound_family,
)
from hyperbisect.solver import (
    brute_force_bisect,
    cover_support,
    enumerate_bisecting_separated,
    hyperplane_count,
    solve_separated,
)


def _lines(*coeffs: tuple[float, float, float]) -> Arrangement:
    return Arrangement(tuple(Hyperplane.from_coeffs(c) for c in coeffs))


def test_hyperplane_count(square_corners: MeasureFamily) -> None:
    assert hyperplane_count(square_corners) == 2
    with pytest.raises(PreconditionError):
        hyperplane_count(square_corners.subfamily([0, 1, 2]))


def test_square_partitions_give_expected_lines(square_corners: MeasureFamily) -> None:
    horizontal = solve_separated(square_corners, BlockPartition(((0, 1), (2, 3))))
    assert arrangements_close(horizontal, _lines((-1.0, 0.0, 1.0), (1.0, 0.0, 1.0)))
    diagonals = solve_separated(square_corners, BlockPartition(((0, 2), (1, 3))))
    assert arrangements_close(diagonals, _lines((0.0, 1.0, -1.0), (0.0, 1.0, 1.0)))
    assert is_bisecting(square_corners, diagonals)


def test_partition_must_fit_family(square_corners: MeasureFamily) -> None:
    with pytest.raises(PreconditionError):
        solve_separated(square_corners, BlockPartition(((0,), (1,), (2,), (3,))))


def test_enumerate_square(square_corners: MeasureFamily) -> None:
    found = enumerate_bisecting_separated(square_corners)
    assert len(found) == 3
    assert all(is_bisecting(square_corners, arr) for arr in found)


def test_enumerate_clusters_matches_brute_force(clustered_square: MeasureFamily) -> None:
    found = enumerate_bisecting_separated(clustered_square)
    assert len(found) == 3
    oracle = brute_force_bisect(clustered_square, 2)
    for arr in found:
        assert is_bisecting(clustered_square, arr)
        assert any(arrangements_close(arr, other) for other in oracle)


def test_hexagon_clusters_give_fifteen_arrangements() -> None:
    angles = np.arange(6) * math.pi / 3
    centers = 10.0 * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    fam = clustered_family(centers, 0.05, 3, seed=21)
    found = enumerate_bisecting_separated(fam)
    assert len(found) == 15
    assert all(is_bisecting(fam, arr) for arr in found)


def test_enumeration_limit(square_corners: MeasureFamily) -> None:
    with pytest.raises(EnumerationLimitError):
        enumerate_bisecting_separated(square_corners, limit=2)


def test_overlapping_family_is_rejected() -> None:
    triangle = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
    fam = MeasureFamily(
        (
            DiscreteMeasure(triangle),
            DiscreteMeasure(triangle + 0.5),
            DiscreteMeasure(triangle + 10.0),
            DiscreteMeasure(triangle + [10.0, -10.0]),
        )
    )
    with pytest.raises(SeparationError):
        solve_separated(fam, BlockPartition(((0, 1), (2, 3))))
    with pytest.raises(SeparationError):
        enumerate_bisecting_separated(fam)


def test_one_more_hyperplane_covers_the_lower_bound_deltas() -> None:
    fam = lower_bound_family(2, 2)
    assert brute_force_bisect(fam, 2) == []
    arrangement = cover_support(fam, 3)
    assert len(arrangement) == 3
    assert is_bisecting(fam, arrangement)
    assert not is_degenerate(arrangement)
    with pytest.raises(PreconditionError):
        cover_support(fam, 2)


def test_cover_in_three_dimensions() -> None:
    fam = lower_bound_family(3, 2)
    arrangement = cover_support(fam, 3)
    assert arrangement.dim == 3
    assert is_bisecting(fam, arrangement)
    assert not is_degenerate(arrangement)
    with pytest.raises(PreconditionError):
        cover_support(fam, 2)


def test_spare_hyperplanes_pass_through_the_first_point() -> None:
    fam = delta_family([[0.0, 0.0], [1.0, 0.0]])
    arrangement = cover_support(fam, 3)
    assert len(arrangement) == 3
    assert is_bisecting(fam, arrangement)
    assert not is_degenerate(arrangement)
    with pytest.raises(PreconditionError):
        cover_support(fam, 0)
