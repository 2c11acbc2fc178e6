"""Bisecting-arrangement solvers.

Separated construction, continuation, projection, support covers and brute force.
"""

from hyperbisect.solver.brute import brute_force_bisect, candidate_lines
from hyperbisect.solver.homotopy import (
    ContinuationConfig,
    SolveReport,
    TauSchedule,
    Trajectory,
    best_report,
    build_trajectory,
    homotopy_solve,
    polish,
    sweep_partitions,
)
from hyperbisect.solver.projection import projection_dimension, projection_lift
from hyperbisect.solver.separated import (
    cover_support,
    enumerate_bisecting_separated,
    hyperplane_count,
    solve_separated,
)
from hyperbisect.solver.tracking import IncidenceTracker, TrackResult

__all__ = [
    "ContinuationConfig",
    "IncidenceTracker",
    "SolveReport",
    "TauSchedule",
    "TrackResult",
    "Trajectory",
    "best_report",
    "brute_force_bisect",
    "build_trajectory",
    "candidate_lines",
    "cover_support",
    "enumerate_bisecting_separated",
    "homotopy_solve",
    "hyperplane_count",
    "polish",
    "projection_dimension",
    "projection_lift",
    "solve_separated",
    "sweep_partitions",
]
