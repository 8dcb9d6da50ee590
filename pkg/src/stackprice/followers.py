"""Best-response oracles for shortest-path, spanning-tree and bipartite
vertex-cover followers.

Each oracle minimizes the pair ``(weight, -revenue)`` lexicographically, so
among minimum-weight subnetworks the one with the highest leader revenue
wins.  Remaining ties are broken deterministically by item id order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core.exact import INF
from .core.model import (
    PRICEABLE,
    SHORTEST_PATH,
    SPANNING_TREE,
    VERTEX_COVER,
    InfeasibleFollowerError,
    Instance,
    PriceAssignment,
    UnsupportedError,
    check_prices,
    uniform_prices,
    weight_and_revenue,
)
from .flow import SINK, SOURCE, FlowNetwork, UnboundedFlowError

_ZERO = Fraction(0)


@dataclass(frozen=True, order=True)
class PerturbedWeight:
    """Lexicographically ordered pair (weight, -revenue)."""

    primary: Fraction
    secondary: Fraction

    def __add__(self, other: "PerturbedWeight") -> "PerturbedWeight":
        if other is INF:
            return INF
        return PerturbedWeight(self.primary + other.primary, self.secondary + other.secondary)

    def __sub__(self, other: "PerturbedWeight") -> "PerturbedWeight":
        return PerturbedWeight(self.primary - other.primary, self.secondary - other.secondary)

    @classmethod
    def zero(cls) -> "PerturbedWeight":
        return cls(_ZERO, _ZERO)

    @classmethod
    def of_fixed(cls, cost: Fraction) -> "PerturbedWeight":
        return cls(cost, _ZERO)

    @classmethod
    def of_price(cls, price: Fraction) -> "PerturbedWeight":
        return cls(price, -price)


@dataclass(frozen=True)
class Response:
    chosen: frozenset[str]
    weight: Fraction
    revenue: Fraction

    @property
    def key(self) -> tuple[Fraction, Fraction]:
        return (self.weight, -self.revenue)


def _item_key(inst: Instance, prices: PriceAssignment, iid: str):
    """Perturbed weight of an item, or INF for an item priced at infinity."""
    it = inst.item_by_id[iid]
    if it.kind == PRICEABLE:
        p = prices[iid]
        return INF if p is INF else PerturbedWeight.of_price(p)
    return PerturbedWeight.of_fixed(it.cost)


def best_response(inst: Instance, follower_index: int, prices: PriceAssignment) -> Response:
    """Weight-minimal subnetwork of the follower, ties to the leader's favor."""
    check_prices(inst, prices)
    spec = inst.followers[follower_index]
    if spec.goal == SHORTEST_PATH:
        chosen = _shortest_path(inst, follower_index, prices)
    elif spec.goal == SPANNING_TREE:
        chosen = _spanning_tree(inst, follower_index, prices)
    elif spec.goal == VERTEX_COVER:
        chosen = _vertex_cover(inst, follower_index, prices)
    else:  # pragma: no cover - rejected at construction
        raise UnsupportedError(spec.goal)
    weight, revenue = weight_and_revenue(inst, prices, chosen)
    return Response(frozenset(chosen), weight, revenue)


def baseline_cost(inst: Instance, follower_index: int) -> Fraction:
    """c_0: cheapest feasible subnetwork avoiding every priceable item."""
    return best_response(inst, follower_index, uniform_prices(inst, INF)).weight


def _shortest_path(inst: Instance, idx: int, prices: PriceAssignment) -> list[str]:
    spec = inst.followers[idx]
    out: dict[str, list[tuple[str, str, PerturbedWeight]]] = {v: [] for v in inst.vertices}
    for it in sorted(inst.items, key=lambda it: it.id):
        key = _item_key(inst, prices, it.id)
        if key is INF or it.u == it.v:
            continue
        out[it.u].append((it.id, it.v, key))
        if not it.directed:
            out[it.v].append((it.id, it.u, key))
    order = {v: n for n, v in enumerate(sorted(inst.vertices))}
    dist = {spec.source: PerturbedWeight.zero()}
    pred: dict[str, tuple[str, str]] = {}
    done = set()
    heap = [(dist[spec.source], order[spec.source], spec.source)]
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == spec.sink:
            break
        for eid, w, key in out[u]:
            nd = d + key
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                pred[w] = (u, eid)
                heapq.heappush(heap, (nd, order[w], w))
    if spec.sink not in done:
        raise InfeasibleFollowerError(idx, f"follower {idx}: sink {spec.sink!r} unreachable")
    path = []
    node = spec.sink
    while node != spec.source:
        node, eid = pred[node]
        path.append(eid)
    return path


class _DisjointSets:
    def __init__(self, elements):
        self.parent = {x: x for x in elements}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _spanning_tree(inst: Instance, idx: int, prices: PriceAssignment) -> list[str]:
    keyed = []
    for it in inst.items:
        key = _item_key(inst, prices, it.id)
        if key is not INF:
            keyed.append((key, it.id, it))
    keyed.sort(key=lambda t: (t[0], t[1]))
    ds = _DisjointSets(inst.vertices)
    tree = []
    for _, iid, it in keyed:
        if ds.union(it.u, it.v):
            tree.append(iid)
    if len(tree) != len(inst.vertices) - 1:
        raise InfeasibleFollowerError(idx, f"follower {idx}: graph is not connected")
    return tree


def two_coloring(vertices, edges) -> Optional[dict[str, int]]:
    """Proper 2-coloring of the graph, or None if it has an odd cycle.

    Each component's smallest vertex gets color 0.
    """
    nbrs: dict[str, list[str]] = {v: [] for v in vertices}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    color: dict[str, int] = {}
    for start in sorted(nbrs):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def cover_graph(inst: Instance, idx: int) -> tuple[list[str], list[tuple[str, str, str]]]:
    """Items touched by a vertex-cover follower and its edges as item pairs."""
    spec = inst.followers[idx]
    at = inst.item_at_vertex
    pairs = []
    touched = set()
    for eid in sorted(spec.edges):
        e = inst.edge_by_id[eid]
        a, b = at[e.u].id, at[e.v].id
        pairs.append((eid, a, b))
        touched.update((a, b))
    return sorted(touched), pairs


def _vertex_cover(inst: Instance, idx: int, prices: PriceAssignment) -> list[str]:
    items, pairs = cover_graph(inst, idx)
    coloring = two_coloring(items, [(a, b) for _, a, b in pairs])
    if coloring is None:
        raise UnsupportedError(f"follower {idx}: vertex cover is only supported on bipartite graphs")
    side_a = [v for v in items if coloring[v] == 0]
    side_b = [v for v in items if coloring[v] == 1]
    net = FlowNetwork(zero=PerturbedWeight.zero())
    for a in side_a:
        net.add_arc(SOURCE, a, _item_key(inst, prices, a))
    for eid, u, v in pairs:
        a, b = (u, v) if coloring[u] == 0 else (v, u)
        net.add_arc(a, b, INF)
    for b in side_b:
        net.add_arc(b, SINK, _item_key(inst, prices, b))
    try:
        net.augment_to_max()
    except UnboundedFlowError:
        raise InfeasibleFollowerError(idx, f"follower {idx}: an edge has no finitely priced endpoint") from None
    reach = net.reachable()
    cover = [a for a in side_a if net.index[a] not in reach]
    cover += [b for b in side_b if net.index[b] in reach]
    return sorted(cover)
