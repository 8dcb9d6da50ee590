"""Stackelberg network pricing: single-price approximation, threshold
analysis, exact bipartite vertex-cover pricing and a brute-force oracle."""

from .analysis import (
    ThresholdProfile,
    constrained_fixed_cost,
    full_profile,
    hull_from_deltas,
    parametric_profile,
    revenue_upper_bound,
)
from .core import (
    INF,
    Instance,
    InstanceError,
    load_instance,
    parse_instance,
    serialize_instance,
    validate,
    weight_and_revenue,
)
from .followers import PerturbedWeight, Response, baseline_cost, best_response
from .instances import RandomParams, gen_from_single_minded, gen_from_unit_demand, gen_harmonic, gen_random
from .oracle import enumerate_feasible, exact_optimum, lp_solve, optimal_prices_for_targets
from .report import SolveReport, evaluate_prices
from .singleprice import candidate_grid, revenue_at_single_price, run_single_price
from .stackvc import build_dual_network, max_flow, solve_one_sided, solve_two_sided

__version__ = "0.1.0"
