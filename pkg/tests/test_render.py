"""SVG rendering tests."""

import pytest

from hyperbisect.data import render_svg
from hyperbisect.errors import DimensionMismatchError
from hyperbisect.geometry import Arrangement, Hyperplane
from hyperbisect.measures import MeasureFamily, delta_family

AXES = Arrangement((Hyperplane((0.0, 1.0, 0.0)), Hyperplane((0.0, 0.0, 1.0))))


def test_render_points_and_lines(clustered_square: MeasureFamily) -> None:
    svg = render_svg(clustered_square, AXES, width=320, height=200)
    assert svg.startswith('<svg width="320" height="200"')
    assert 'xmlns="http://www.w3.org/2000/svg"' in svg
    assert svg.count("<line ") == 2
    assert svg.count("<circle ") == 12
    assert svg.rstrip().endswith("</svg>")


def test_render_without_arrangement_colors_each_measure(square_corners: MeasureFamily) -> None:
    svg = render_svg(square_corners)
    assert "<line " not in svg
    assert svg.count("<circle ") == 4
    assert 'fill="#1f77b4"' in svg and 'fill="#d62728"' in svg


def test_render_rejects_other_dimensions(square_corners: MeasureFamily) -> None:
    with pytest.raises(DimensionMismatchError):
        render_svg(delta_family([[0.0, 0.0, 0.0]]))
    with pytest.raises(DimensionMismatchError):
        render_svg(square_corners, Arrangement((Hyperplane((0.0, 0.0, 0.0, 1.0)),)))
