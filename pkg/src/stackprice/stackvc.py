"""Exact pricing for one follower buying a bipartite vertex cover.

The cover problem is the min cut of a flow network: source -> A-side vertex
and B-side vertex -> sink arcs carry vertex costs, graph edges run A -> B with
infinite capacity.  With all priceable vertices on the A side, a max flow with
priceable capacities 0 has value c_n; raising those capacities to infinity and
augmenting further reaches c_0, and the flow on each source arc of a priceable
vertex is its optimal price.  Revenue is c_0 - c_n.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .core.exact import INF
from .core.model import (
    FIXED,
    VERTEX_COVER,
    VERTEX_GAME,
    Instance,
    PriceAssignment,
    UnsupportedError,
)
from .flow import SINK, SOURCE, Augmentation, FlowNetwork
from .followers import cover_graph, two_coloring
from .report import SolveReport, evaluate_prices


class NotBipartiteError(UnsupportedError):
    pass


class InvariantViolation(AssertionError):
    """A structural property of the exact algorithm failed at runtime."""


@dataclass(frozen=True)
class CutCover:
    cover: frozenset[str]
    cost: Fraction


def bipartition(inst: Instance, follower_index: int = 0) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Sides (A, B) of the follower's graph, as item ids.

    Components are oriented so that priceable items land on A whenever a
    component has them on one side only.
    """
    items, pairs = cover_graph(inst, follower_index)
    color = two_coloring(items, [(a, b) for _, a, b in pairs])
    if color is None:
        raise NotBipartiteError(f"follower {follower_index}: graph is not bipartite")
    comp = _components(items, pairs)
    for members in comp:
        sides = {color[v] for v in members if inst.item_by_id[v].priceable}
        if sides == {1}:
            for v in members:
                color[v] = 1 - color[v]
    side_a = tuple(v for v in items if color[v] == 0)
    side_b = tuple(v for v in items if color[v] == 1)
    return side_a, side_b


def _components(items, pairs) -> list[list[str]]:
    nbrs = {v: [] for v in items}
    for _, a, b in pairs:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen, out = set(), []
    for v in items:
        if v in seen:
            continue
        seen.add(v)
        stack, members = [v], []
        while stack:
            u = stack.pop()
            members.append(u)
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(members))
    return out


def _vc_follower(inst: Instance) -> int:
    if inst.game != VERTEX_GAME or inst.k != 1 or inst.followers[0].goal != VERTEX_COVER:
        raise UnsupportedError("needs a vertex game with a single vertex-cover follower")
    return 0


def build_dual_network(inst: Instance, prices: PriceAssignment, follower_index: int = 0,
                       sides: Optional[tuple[tuple[str, ...], tuple[str, ...]]] = None) -> FlowNetwork:
    """Flow network whose min cut is the follower's cheapest cover at ``prices``."""
    side_a, side_b = sides if sides is not None else bipartition(inst, follower_index)
    in_a = set(side_a)

    def cap(iid: str):
        it = inst.item_by_id[iid]
        return prices[iid] if it.priceable else it.cost

    net = FlowNetwork(zero=Fraction(0), side_a=side_a, side_b=side_b)
    for a in side_a:
        net.add_arc(SOURCE, a, cap(a))
    _, pairs = cover_graph(inst, follower_index)
    for _, u, v in pairs:
        a, b = (u, v) if u in in_a else (v, u)
        net.add_arc(a, b, INF)
    for b in side_b:
        net.add_arc(b, SINK, cap(b))
    return net


def cut_cover(net: FlowNetwork) -> set[str]:
    """A-side vertices unreachable from s plus B-side vertices reachable."""
    reach = net.reachable()
    cover = {a for a in net.side_a if net.index[a] not in reach}
    cover |= {b for b in net.side_b if net.index[b] in reach}
    return cover


def _cover_cost(net: FlowNetwork, cover) -> Fraction:
    total = Fraction(0)
    for v in cover:
        arcs = net.arcs_between(SOURCE, v) or net.arcs_between(v, SINK)
        total += arcs[0].cap
    return total


def max_flow(net: FlowNetwork, phase: int = 1, trace: Optional[list] = None) -> tuple[Fraction, CutCover]:
    """Augment to a maximum flow and read the minimum cover off the residual graph."""
    for a in net.arcs:
        if (net.nodes[a.tail] == SOURCE or net.nodes[a.head] == SINK) and a.cap is INF:
            raise ValueError("source and sink arcs need finite capacities")
    net.augment_to_max(phase, trace.append if trace is not None else None)
    cover = cut_cover(net)
    value = net.value()
    cost = _cover_cost(net, cover)
    if cost != value:
        raise InvariantViolation(f"cut cost {cost} differs from flow value {value}")
    return value, CutCover(frozenset(cover), cost)


def solve_one_sided(inst: Instance, trace: Optional[list[Augmentation]] = None) -> SolveReport:
    """Optimal prices when every priceable vertex lies on one side."""
    idx = _vc_follower(inst)
    side_a, side_b = bipartition(inst, idx)
    if any(inst.item_by_id[b].priceable for b in side_b):
        raise UnsupportedError("priceable vertices on both sides; use solve_two_sided")
    touched = set(side_a) | set(side_b)
    active = [v for v in side_a if inst.item_by_id[v].priceable]
    log: list[Augmentation] = trace if trace is not None else []

    zero_prices = {pid: Fraction(0) for pid in inst.priceable_ids}
    net = build_dual_network(inst, zero_prices, idx, (side_a, side_b))
    c_n, _ = max_flow(net, 1, log)
    phase1_len = len(log)

    source_arc = {v: net.arcs_between(SOURCE, v)[0] for v in active}
    for arc in source_arc.values():
        arc.cap = INF
    net.augment_to_max(2, log.append)
    c_0 = net.value()

    active_nodes = set(active)
    for aug in log[phase1_len:]:
        if aug.path[1] not in active_nodes:
            raise InvariantViolation(f"phase-2 augmenting path {aug.path} does not start at a priceable vertex")

    prices: dict = {pid: Fraction(0) for pid in inst.priceable_ids}
    for v, arc in source_arc.items():
        prices[v] = arc.flow
        arc.cap = arc.flow
    final_cover = cut_cover(net)
    missing = active_nodes - final_cover
    if missing:
        raise InvariantViolation(f"priceable vertices {sorted(missing)} left the final cover")

    revenue, responses = evaluate_prices(inst, prices)
    if revenue != c_0 - c_n:
        raise InvariantViolation(f"revenue {revenue} differs from c_0 - c_n = {c_0 - c_n}")
    response = responses[0]
    # price-0 vertices add no revenue, so the tie-break is indifferent to them
    charged = {v for v in active if prices[v] > 0}
    if response.weight != c_0 or not charged <= response.chosen:
        raise InvariantViolation("follower does not buy every charged vertex at weight c_0")
    diagnostics = {
        "c_0": c_0,
        "c_n": c_n,
        "upper_bound": c_0 - c_n,
        "phase1_augmentations": phase1_len,
        "phase2_augmentations": len(log) - phase1_len,
        "untouched_priceable": sorted(set(inst.priceable_ids) - touched),
    }
    return SolveReport("stackvc", prices, revenue, responses, diagnostics)


def _block_side(inst: Instance, blocked: set[str]) -> Instance:
    """Copy of ``inst`` where ``blocked`` priceable vertices become fixed
    vertices too expensive to appear in any minimum cover."""
    prohibitive = sum(inst.fixed_costs(), Fraction(0)) + 1
    items = tuple(replace(it, kind=FIXED, cost=prohibitive) if it.id in blocked else it for it in inst.items)
    return replace(inst, items=items)


def solve_two_sided(inst: Instance) -> SolveReport:
    """Better of two one-sided runs; the inactive side is priced at infinity.

    With c^A the cheapest fixed cost of a cover that may use A-side but no
    B-side priceable vertices, the runs earn c_0 - c^A and c_0 - c^B.  Meet
    and join of the all-fixed and the all-free cover give
    c^A + c^B <= c_0 + c_all, so the two revenues sum to at least
    c_0 - c_all >= r*.
    """
    idx = _vc_follower(inst)
    side_a, side_b = bipartition(inst, idx)
    touched = set(side_a) | set(side_b)
    pa = {v for v in side_a if inst.item_by_id[v].priceable}
    pb = {v for v in side_b if inst.item_by_id[v].priceable}
    if not pb:
        rep = solve_one_sided(inst)
        return replace(rep, algorithm="stackvc2", diagnostics={**rep.diagnostics, "active_side": "A"})
    runs = []
    for label, active, inactive in (("A", pa, pb), ("B", pb, pa)):
        if not active:
            continue
        rep = solve_one_sided(_block_side(inst, inactive))
        prices = {pid: Fraction(0) for pid in inst.priceable_ids}
        for v in active:
            prices[v] = rep.prices[v]
        for v in inactive:
            prices[v] = INF
        revenue, responses = evaluate_prices(inst, prices)
        if revenue != rep.revenue:
            raise InvariantViolation("blocked run earns a different revenue in the original game")
        runs.append((revenue, label, prices, responses, rep))
    revenue, label, prices, responses, rep = max(runs, key=lambda r: (r[0], r[1] == "A"))
    diagnostics = {
        "active_side": label,
        "run_revenues": {r[1]: r[0] for r in runs},
        "c_0": rep.diagnostics["c_0"],
        "c_n": rep.diagnostics["c_n"],
        "untouched_priceable": sorted(set(inst.priceable_ids) - touched),
    }
    return SolveReport("stackvc2", prices, revenue, responses, diagnostics)
