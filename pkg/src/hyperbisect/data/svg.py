"""Planar SVG figures: support points colored per measure, one line element per hyperplane."""

from __future__ import annotations

from typing import Any

import numpy as np

from hyperbisect.errors import DimensionMismatchError
from hyperbisect.geometry import Arrangement
from hyperbisect.measures import MeasureFamily

SVG_NS = "http://www.w3.org/2000/svg"
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")
MARGIN = 0.08


def _props(attributes: dict[str, Any]) -> str:
    parts = []
    for key, value in attributes.items():
        if isinstance(value, float):
            value = round(value, 6)
        parts.append(f'{key.replace("_", "-")}="{value}"')
    return " ".join(parts)


def _element(tag: str, **attributes: Any) -> str:
    return f"<{tag} {_props(attributes)} />"


def render_svg(
    fam: MeasureFamily,
    arr: Arrangement | None = None,
    *,
    width: int = 640,
    height: int = 640,
) -> str:
    if fam.dim != 2:
        raise DimensionMismatchError(
            f"Only planar families can be rendered, got dimension {fam.dim}"
        )
    if arr is not None and arr.dim != 2:
        raise DimensionMismatchError(
            f"Only planar arrangements can be rendered, got dimension {arr.dim}"
        )

    points = fam.points
    low, high = points.min(axis=0), points.max(axis=0)
    extent = np.maximum(high - low, 1e-9)
    usable = np.array([width, height], dtype=float) * (1.0 - 2.0 * MARGIN)
    scale = float(np.min(usable / extent))
    middle = 0.5 * (low + high)

    def to_screen(xy: np.ndarray) -> tuple[float, float]:
        return (
            float(0.5 * width + scale * (xy[0] - middle[0])),
            float(0.5 * height - scale * (xy[1] - middle[1])),
        )

    body = [_element("rect", x=0, y=0, width=width, height=height, fill="white")]
    if arr is not None:
        reach = 2.0 * float(np.linalg.norm(extent))
        for plane in arr:
            normal = plane.vector[1:]
            anchor = -plane.vector[0] * normal / float(normal @ normal)
            direction = np.array([-normal[1], normal[0]]) / float(np.linalg.norm(normal))
            x1, y1 = to_screen(anchor - reach * direction)
            x2, y2 = to_screen(anchor + reach * direction)
            body.append(
                _element("line", x1=x1, y1=y1, x2=x2, y2=y2, stroke="black", stroke_width=1.5)
            )
    radius = max(2.0, min(width, height) / 160)
    for index, measure in enumerate(fam):
        color = PALETTE[index % len(PALETTE)]
        for point in measure.points:
            cx, cy = to_screen(point)
            body.append(_element("circle", cx=cx, cy=cy, r=radius, fill=color))

    attributes = {
        "width": width,
        "height": height,
        "viewBox": f"0 0 {width} {height}",
        "version": "1.1",
        "xmlns": SVG_NS,
    }
    header = f"<svg {_props(attributes)}>"
    return "\n".join([header, *body, "</svg>"]) + "\n"
