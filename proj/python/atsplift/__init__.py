"""Subtour (DFJ) and order-variable (MTZ) relaxations of the asymmetric TSP.

Exact rational LP bounds, separation oracles, and the shortest-path lift
taking any point of the subtour polytope to feasible order potentials.
"""

from ._core import (  # noqa: F401
    AtspInstance,
    BruteForceResult,
    CutCertificate,
    DfjBound,
    FractionalPoint,
    LiftResult,
    MtzBound,
    MtzViolation,
    NegativeCycle,
    Potentials,
    Tour,
    __version__,
    brute_force_optimum,
    check_degrees,
    convex_combination,
    cycle_to_cut,
    dfj_check_enumerate,
    dfj_lhs,
    dfj_lp_bound,
    lift_point,
    mtz_check,
    mtz_lp_bound,
    mtz_slack,
    parse_tsplib,
    point_from_tour,
    random_dfj_point,
    separation_mincut,
    serialize_tsplib,
    visit_order_potentials,
)
