"""Self-contained simplex solver and the coupling-polytope oracles built on it."""

from .incidence import IncidenceMatrix, build_incidence_cyclic, event_table
from .oracle import (
    cnt0_lp,
    cnt1_lp,
    cnt2_lp,
    feasibility_lp,
    is_noncontextual_lp,
    ncnt2_lp,
    polytope_distance_lp,
    surface_distance_by_facet,
)
from .simplex import FEAS_TOL, PIVOT_TOL, LinearProgram, LpSolution, solve

__all__ = [
    "FEAS_TOL",
    "PIVOT_TOL",
    "IncidenceMatrix",
    "LinearProgram",
    "LpSolution",
    "build_incidence_cyclic",
    "cnt0_lp",
    "cnt1_lp",
    "cnt2_lp",
    "event_table",
    "feasibility_lp",
    "is_noncontextual_lp",
    "ncnt2_lp",
    "polytope_distance_lp",
    "solve",
    "surface_distance_by_facet",
]
