"""Ham-sandwich cut tests."""

import math

import numpy as np
import pytest

from hyperbisect.errors import PreconditionError
from hyperbisect.geometry import Arrangement, Hyperplane, affine_eval
from hyperbisect.measures import (
    DiscreteMeasure,
    clustered_family,
    delta_family,
    is_bisecting,
    random_oddly_supported_family,
)
from hyperbisect.sandwich import (
    bisecting_candidates,
    cuts_coincide,
    ham_sandwich,
    uniqueness_check,
)

LEFT = DiscreteMeasure([[0.0, 0.0], [0.0, 1.0], [0.0, 2.0]])
RIGHT = DiscreteMeasure([[5.0, 0.1], [5.0, 1.0], [5.0, 2.1]])
HORIZONTAL = Hyperplane.from_coeffs((-1.0, 0.0, 1.0))


def _triangle(radius: float, angles: tuple[float, ...]) -> DiscreteMeasure:
    return DiscreteMeasure(
        [[radius * math.cos(math.radians(a)), radius * math.sin(math.radians(a))] for a in angles]
    )


def test_two_vertical_triples_are_cut_at_height_one() -> None:
    cut = ham_sandwich([LEFT, RIGHT])
    assert cuts_coincide(cut, HORIZONTAL)
    assert uniqueness_check([LEFT, RIGHT])


def test_two_points_give_the_line_through_them() -> None:
    cut = ham_sandwich(delta_family([[0.0, 0.0], [1.0, 1.0]]))
    assert affine_eval(cut, (0.0, 0.0)) == pytest.approx(0.0, abs=1e-12)
    assert affine_eval(cut, (1.0, 1.0)) == pytest.approx(0.0, abs=1e-12)


def test_ham_sandwich_in_one_and_three_dimensions() -> None:
    line_cut = ham_sandwich([DiscreteMeasure([[3.0], [-1.0], [7.0]])])
    assert affine_eval(line_cut, (3.0,)) == pytest.approx(0.0, abs=1e-12)
    fam = random_oddly_supported_family(3, 3, 5, seed=11)
    assert is_bisecting(fam, Arrangement((ham_sandwich(fam),)))


def test_random_planar_pairs_are_bisected() -> None:
    for seed in range(100):
        fam = random_oddly_supported_family(2, 2, 7, seed=seed)
        cut = ham_sandwich(fam)
        assert is_bisecting(fam, Arrangement((cut,)))
        assert any(cuts_coincide(cut, other) for other in bisecting_candidates(fam))


def test_random_spatial_triples_are_bisected() -> None:
    for seed in range(20):
        fam = random_oddly_supported_family(3, 3, 5, seed=100 + seed)
        cut = ham_sandwich(fam)
        assert cut.dim == 3
        assert is_bisecting(fam, Arrangement((cut,)))


def test_concentric_triangles_have_several_cuts() -> None:
    inner = _triangle(1.0, (90.0, 210.0, 330.0))
    outer = _triangle(2.0, (270.0, 30.0, 150.0))
    assert not uniqueness_check([inner, outer])
    assert len(bisecting_candidates([inner, outer])) >= 3


def test_uniqueness_check_with_explicit_cuts() -> None:
    assert uniqueness_check([LEFT, RIGHT], [HORIZONTAL, -HORIZONTAL])
    assert not uniqueness_check([LEFT, RIGHT], [Hyperplane((0.0, 1.0, 0.0))])


def test_ham_sandwich_preconditions() -> None:
    with pytest.raises(PreconditionError):
        ham_sandwich(delta_family([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(PreconditionError):
        ham_sandwich([DiscreteMeasure([[0.0, 0.0], [1.0, 0.0]]), LEFT])


def test_cuts_coincide_up_to_sign() -> None:
    plane = Hyperplane.from_coeffs(np.array([0.2, -0.4, 1.0]))
    assert cuts_coincide(plane, -plane)
    assert not cuts_coincide(plane, Hyperplane((0.0, 1.0, 0.0)))
    assert not cuts_coincide(plane, Hyperplane((0.0, 0.0, 0.0, 1.0)))


def test_far_apart_clusters_have_a_unique_cut() -> None:
    for seed in range(100):
        fam = clustered_family([[0.0, 0.0], [100.0, 30.0]], 0.005, 3, seed=seed)
        cut = ham_sandwich(fam)
        assert uniqueness_check(fam)
        assert uniqueness_check(fam, [cut])
