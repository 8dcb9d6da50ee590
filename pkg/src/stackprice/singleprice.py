"""Single-price algorithm: one common price from a geometric grid."""

from __future__ import annotations

from fractions import Fraction

from .core.exact import harmonic, lcm_of_denominators
from .core.model import Instance, uniform_prices
from .followers import Response, baseline_cost, best_response
from .report import SolveReport, evaluate_prices


def price_floor(inst: Instance, epsilon: Fraction) -> Fraction:
    """Lowest grid point needed: every positive threshold is >= 1/(m D)."""
    d = lcm_of_denominators(inst.fixed_costs())
    return Fraction(1, inst.m * d) / (1 + epsilon)


def candidate_grid(inst: Instance, epsilon: Fraction) -> list[Fraction]:
    """Powers (1+eps)^j from just below the price floor up to max c_0."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if inst.m == 0:
        return []
    q = 1 + epsilon
    floor = price_floor(inst, epsilon)
    top = max(baseline_cost(inst, j) for j in range(inst.k))
    # j_min: largest j with q^j <= floor
    p = Fraction(1)
    while p > floor:
        p /= q
    while p * q <= floor:
        p *= q
    grid = [p]
    while grid[-1] < top:
        grid.append(grid[-1] * q)
    return grid


def revenue_at_single_price(inst: Instance, price: Fraction) -> tuple[Fraction, tuple[Response, ...]]:
    return evaluate_prices(inst, uniform_prices(inst, price))


def guarantee_factor(inst: Instance, epsilon: Fraction) -> tuple[str, Fraction]:
    """The applicable approximation bound and its name."""
    q = 1 + Fraction(epsilon)
    if inst.k == 1:
        return "(1+eps)H_m", q * harmonic(inst.m)
    if not inst.weighted:
        return "(1+eps)(H_k+H_m)", q * (harmonic(inst.k) + harmonic(inst.m))
    return "(1+eps)m^2", q * inst.m * inst.m


def delta_upper_bound(inst: Instance) -> Fraction:
    """sum_j d_j (c_0(j) - c_m(j)); bounds r* from above."""
    free = uniform_prices(inst, Fraction(0))
    total = Fraction(0)
    for j, f in enumerate(inst.followers):
        total += f.demand * (baseline_cost(inst, j) - best_response(inst, j, free).weight)
    return total


def run_single_price(inst: Instance, epsilon: Fraction) -> SolveReport:
    """Best uniform price on the grid; ties go to the smallest price."""
    epsilon = Fraction(epsilon)
    grid = candidate_grid(inst, epsilon)
    name, factor = guarantee_factor(inst, epsilon)
    best_price, best_revenue, best_responses = None, Fraction(0), None
    for price in grid:
        revenue, responses = revenue_at_single_price(inst, price)
        if best_responses is None or revenue > best_revenue:
            best_price, best_revenue, best_responses = price, revenue, responses
    if best_responses is None:
        # nothing to price
        best_revenue, best_responses = evaluate_prices(inst, {})
        prices = {}
    else:
        prices = uniform_prices(inst, best_price)
    diagnostics = {
        "epsilon": epsilon,
        "candidate_count": len(grid),
        "best_price": best_price,
        "upper_bound": delta_upper_bound(inst),
        "guarantee": name,
        "guarantee_factor": factor,
    }
    return SolveReport("single-price", prices, best_revenue, best_responses, diagnostics)
