"""Exact revenue maximization by exhausting target tuples.

For a fixed target subnetwork per follower, the best prices solve a linear
program: maximize the weighted target revenue subject to every target being
no heavier than any alternative of its follower.  The optimum over all target
tuples is r*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..core.exact import INF
from ..core.model import Instance, fixed_part, priceable_part
from ..followers import baseline_cost
from ..report import SolveReport, evaluate_prices
from .enumerate import DEFAULT_LIMIT, OracleLimitError, enumerate_feasible
from .simplex import OPTIMAL, UNBOUNDED, LinearProgram, lp_solve

DEFAULT_TUPLE_LIMIT = 1_000_000


@dataclass(frozen=True)
class TargetPricing:
    prices: dict
    revenue: Fraction


def target_lp(inst: Instance, targets: Sequence[frozenset[str]],
              families: Optional[Sequence[list[frozenset[str]]]] = None) -> Optional[LinearProgram]:
    """LP over the priceable items used by some target.

    Items outside every target are priced at infinity, so alternatives using
    them never bind and are left out.  Returns None when a constraint with no
    variables is already violated.
    """
    if families is None:
        families = [enumerate_feasible(inst, j) for j in range(inst.k)]
    used = sorted(set().union(*(priceable_part(inst, t) for t in targets))) if targets else []
    used_set = set(used)
    objective: dict[str, Fraction] = {}
    for f, t in zip(inst.followers, targets):
        for e in priceable_part(inst, t):
            objective[e] = objective.get(e, Fraction(0)) + f.demand
    rows: dict[tuple, Fraction] = {}
    for j, target in enumerate(targets):
        t_price = priceable_part(inst, target)
        t_fixed = fixed_part(inst, target)
        for alt in families[j]:
            a_price = priceable_part(inst, alt)
            if not a_price <= used_set:
                continue
            coeffs = {}
            for e in t_price - a_price:
                coeffs[e] = Fraction(1)
            for e in a_price - t_price:
                coeffs[e] = Fraction(-1)
            rhs = fixed_part(inst, alt) - t_fixed
            key = tuple(sorted(coeffs.items()))
            if not key:
                if rhs < 0:
                    return None
                continue
            if key not in rows or rhs < rows[key]:
                rows[key] = rhs
    lp = LinearProgram(used, objective)
    for key, rhs in sorted(rows.items()):
        lp.add(dict(key), rhs)
    return lp


def optimal_prices_for_targets(inst: Instance, targets: Sequence[frozenset[str]],
                               families=None) -> Optional[TargetPricing]:
    """Revenue-maximizing prices making each target weight-minimal, or None.

    Priceable items outside all targets get price INF in the result.
    """
    lp = target_lp(inst, targets, families)
    if lp is None:
        return None
    res = lp_solve(lp)
    if res.status == UNBOUNDED:
        raise AssertionError("target LP unbounded although every follower has an all-fixed fallback")
    if res.status != OPTIMAL:
        return None
    prices = {pid: res.solution.get(pid, INF) for pid in inst.priceable_ids}
    return TargetPricing(prices, res.value)


def exact_optimum(inst: Instance, limit: int = DEFAULT_TUPLE_LIMIT,
                  family_limit: int = DEFAULT_LIMIT) -> SolveReport:
    """r* and an optimal price assignment by branch and bound over target tuples.

    A target S_j can earn at most d_j (c_0(j) - c(S_j ∩ E_f)); tuples whose
    bound cannot beat the incumbent are skipped.  Ties go to the
    lexicographically smallest target tuple.
    """
    families = [enumerate_feasible(inst, j, family_limit) for j in range(inst.k)]
    total = 1
    for fam in families:
        total *= len(fam)
    if total > limit:
        raise OracleLimitError(f"{total} target tuples exceed the limit {limit}")
    baselines = [baseline_cost(inst, j) for j in range(inst.k)]
    ranked = []
    for j, fam in enumerate(families):
        d = inst.followers[j].demand
        opts = []
        for t in fam:
            bound = d * (baselines[j] - fixed_part(inst, t))
            if bound >= 0:
                opts.append((bound, tuple(sorted(t)), t))
        opts.sort(key=lambda o: (-o[0], o[1]))
        ranked.append(opts)
    # best achievable bound of followers j.. for pruning
    suffix = [Fraction(0)] * (inst.k + 1)
    for j in range(inst.k - 1, -1, -1):
        suffix[j] = suffix[j + 1] + (ranked[j][0][0] if ranked[j] else Fraction(0))

    best: dict = {"value": None, "key": None, "pricing": None, "targets": None}
    stats = {"tuples": 0, "lps": 0}
    chosen: list = []

    def rec(j: int, bound: Fraction) -> None:
        if best["value"] is not None and bound + suffix[j] < best["value"]:
            return
        if j == inst.k:
            stats["tuples"] += 1
            key = tuple(o[1] for o in chosen)
            if best["value"] is not None and bound == best["value"] and key > best["key"]:
                return
            stats["lps"] += 1
            tp = optimal_prices_for_targets(inst, [o[2] for o in chosen], families)
            if tp is None:
                return
            if (best["value"] is None or tp.revenue > best["value"]
                    or (tp.revenue == best["value"] and key < best["key"])):
                best.update(value=tp.revenue, key=key, pricing=tp, targets=[o[2] for o in chosen])
            return
        for opt in ranked[j]:
            chosen.append(opt)
            rec(j + 1, bound + opt[0])
            chosen.pop()

    rec(0, Fraction(0))
    if best["pricing"] is None:
        raise AssertionError("no feasible target tuple although the instance validates")
    prices = best["pricing"].prices
    revenue, responses = evaluate_prices(inst, prices)
    if revenue != best["value"]:
        raise AssertionError(f"re-evaluated revenue {revenue} differs from LP optimum {best['value']}")
    diagnostics = {
        "targets": [sorted(t) for t in best["targets"]],
        "family_sizes": [len(f) for f in families],
        "tuples_evaluated": stats["tuples"],
        "lps_solved": stats["lps"],
    }
    return SolveReport("exact", prices, revenue, responses, diagnostics)
