"""Brute-force planar oracle tests."""

import numpy as np
import pytest

from hyperbisect.errors import EnumerationLimitError, PreconditionError
from hyperbisect.geometry import affine_eval, is_degenerate
from hyperbisect.measures import (
    MeasureFamily,
    delta_family,
    is_bisecting,
    lower_bound_family,
    random_oddly_supported_family,
)
from hyperbisect.solver import brute_force_bisect, candidate_lines


def test_square_corners_have_three_line_pairs(square_corners: MeasureFamily) -> None:
    found = brute_force_bisect(square_corners, 2)
    assert len(found) == 3
    assert all(is_bisecting(square_corners, arr) and not is_degenerate(arr) for arr in found)


def test_lower_bound_family_has_no_pair() -> None:
    assert brute_force_bisect(lower_bound_family(2, 2), 2) == []


def test_single_point_lines_pass_through_it() -> None:
    found = brute_force_bisect(delta_family([[0.3, 0.7]]), 1)
    assert len(found) == 6
    for arr in found:
        assert affine_eval(arr[0], (0.3, 0.7)) == pytest.approx(0.0, abs=1e-12)


def test_random_pairs_contain_a_bisecting_line() -> None:
    fam = random_oddly_supported_family(2, 2, 3, seed=8)
    found = brute_force_bisect(fam, 1)
    assert found
    assert all(is_bisecting(fam, arr) for arr in found)


def test_candidate_lines_are_unit_rows() -> None:
    lines = candidate_lines(np.array([[0.0, 0.0], [1.0, 2.0], [1.0, 2.0]]))
    # 2 distinct pairs plus 6 axis lines, five variants each
    assert lines.shape == (40, 3)
    np.testing.assert_allclose(np.linalg.norm(lines, axis=1), 1.0)


def test_oracle_limits(square_corners: MeasureFamily) -> None:
    with pytest.raises(EnumerationLimitError):
        brute_force_bisect(square_corners, 2, max_points=3)
    with pytest.raises(PreconditionError):
        brute_force_bisect(square_corners, 3)
    with pytest.raises(PreconditionError):
        brute_force_bisect(delta_family([[0.0, 0.0, 0.0]]), 1)
