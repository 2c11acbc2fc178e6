"""Shared families for the test suite."""

import numpy as np
import pytest

from hyperbisect.measures import DiscreteMeasure, MeasureFamily, delta_family

CLUSTER_OFFSETS = np.array([[0.03, 0.01], [-0.01, 0.03], [-0.02, -0.03]])
SQUARE = np.array([[0.0, 0.0], [10.0, 0.0], [10.0, 10.0], [0.0, 10.0]])


@pytest.fixture
def square_corners() -> MeasureFamily:
    return delta_family([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])


@pytest.fixture
def clustered_square() -> MeasureFamily:
    """Three-point clusters (radius < 0.05) at the corners of a square of side 10."""

    return MeasureFamily(
        tuple(DiscreteMeasure.uniform(corner + CLUSTER_OFFSETS) for corner in SQUARE)
    )
