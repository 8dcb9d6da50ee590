"""Instance data model for edge and vertex pricing games."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional

from .exact import INF, ExactNumber

FIXED = "fixed"
PRICEABLE = "priceable"

EDGE_GAME = "edge"
VERTEX_GAME = "vertex"

SHORTEST_PATH = "shortest_path"
SPANNING_TREE = "spanning_tree"
VERTEX_COVER = "vertex_cover"

GOALS = (SHORTEST_PATH, SPANNING_TREE, VERTEX_COVER)

PriceAssignment = Mapping[str, ExactNumber]


class InstanceError(ValueError):
    """Malformed instance: bad reference, negative cost, duplicate id, ..."""


class PricingError(ValueError):
    """A price assignment does not fit the instance."""


class InfeasibleFollowerError(ValueError):
    """A follower has no feasible subnetwork under the given prices."""

    def __init__(self, follower_index: int, message: str = ""):
        self.follower_index = follower_index
        super().__init__(message or f"follower {follower_index} has no feasible subnetwork")


class UnsupportedError(ValueError):
    """Operation not available for this follower type or instance shape."""


@dataclass(frozen=True)
class Item:
    """An edge (edge game) or vertex (vertex game) that can be bought.

    Fixed items carry a cost; priceable items get their price from the leader.
    """

    id: str
    kind: str
    cost: Optional[Fraction] = None
    u: Optional[str] = None
    v: Optional[str] = None
    directed: bool = False
    vertex: Optional[str] = None

    @property
    def priceable(self) -> bool:
        return self.kind == PRICEABLE


@dataclass(frozen=True)
class Edge:
    """Structural (cost-free) edge of a vertex game; followers cover these."""

    id: str
    u: str
    v: str


@dataclass(frozen=True)
class FollowerSpec:
    goal: str
    source: Optional[str] = None
    sink: Optional[str] = None
    edges: tuple[str, ...] = ()
    demand: Fraction = Fraction(1)


@dataclass(frozen=True)
class Instance:
    game: str
    vertices: tuple[str, ...]
    items: tuple[Item, ...]
    followers: tuple[FollowerSpec, ...]
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        check_structure(self)

    @cached_property
    def item_by_id(self) -> dict[str, Item]:
        return {it.id: it for it in self.items}

    @cached_property
    def priceable_ids(self) -> tuple[str, ...]:
        return tuple(sorted(it.id for it in self.items if it.priceable))

    @cached_property
    def fixed_ids(self) -> tuple[str, ...]:
        return tuple(sorted(it.id for it in self.items if not it.priceable))

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def item_at_vertex(self) -> dict[str, Item]:
        """Vertex games only: vertex id -> item standing on it."""
        return {it.vertex: it for it in self.items if it.vertex is not None}

    @property
    def m(self) -> int:
        return len(self.priceable_ids)

    @property
    def k(self) -> int:
        return len(self.followers)

    @property
    def weighted(self) -> bool:
        return any(f.demand != 1 for f in self.followers)

    def fixed_costs(self) -> list[Fraction]:
        return [it.cost for it in self.items if not it.priceable]


def check_structure(inst: Instance) -> None:
    if inst.game not in (EDGE_GAME, VERTEX_GAME):
        raise InstanceError(f"unknown game type {inst.game!r}")
    vset = set(inst.vertices)
    if len(vset) != len(inst.vertices):
        raise InstanceError("duplicate vertex id")
    ids = set()
    for it in inst.items:
        if it.id in ids:
            raise InstanceError(f"duplicate item id {it.id!r}")
        ids.add(it.id)
        if it.kind not in (FIXED, PRICEABLE):
            raise InstanceError(f"item {it.id!r}: unknown kind {it.kind!r}")
        if it.priceable:
            if it.cost is not None:
                raise InstanceError(f"priceable item {it.id!r} must not carry a cost")
        else:
            if it.cost is None or it.cost is INF:
                raise InstanceError(f"fixed item {it.id!r} needs a finite cost")
            if it.cost < 0:
                raise InstanceError(f"fixed item {it.id!r} has negative cost")
        if inst.game == EDGE_GAME:
            if it.u not in vset or it.v not in vset:
                raise InstanceError(f"edge {it.id!r} references an unknown vertex")
        else:
            if it.vertex not in vset:
                raise InstanceError(f"item {it.id!r} references an unknown vertex")
    if inst.game == VERTEX_GAME:
        seen = set()
        for it in inst.items:
            if it.vertex in seen:
                raise InstanceError(f"vertex {it.vertex!r} carries two items")
            seen.add(it.vertex)
    eids = set()
    for e in inst.edges:
        if e.id in eids or e.id in ids:
            raise InstanceError(f"duplicate edge id {e.id!r}")
        eids.add(e.id)
        if e.u not in vset or e.v not in vset:
            raise InstanceError(f"edge {e.id!r} references an unknown vertex")
    if not inst.followers:
        raise InstanceError("an instance needs at least one follower")
    item_vertices = {it.vertex for it in inst.items}
    for i, f in enumerate(inst.followers):
        if f.goal not in GOALS:
            raise InstanceError(f"follower {i}: unknown goal {f.goal!r}")
        if f.demand is INF or f.demand < 0:
            raise InstanceError(f"follower {i}: demand must be finite and >= 0")
        if f.goal == VERTEX_COVER:
            if inst.game != VERTEX_GAME:
                raise InstanceError(f"follower {i}: vertex cover needs a vertex game")
            for eid in f.edges:
                if eid not in eids:
                    raise InstanceError(f"follower {i}: unknown edge {eid!r}")
                e = inst.edge_by_id[eid]
                if e.u not in item_vertices or e.v not in item_vertices:
                    raise InstanceError(f"follower {i}: edge {eid!r} touches a vertex without cost")
        else:
            if inst.game != EDGE_GAME:
                raise InstanceError(f"follower {i}: {f.goal} needs an edge game")
            if f.goal == SHORTEST_PATH:
                if f.source not in vset or f.sink not in vset:
                    raise InstanceError(f"follower {i}: unknown terminal")
            elif any(it.directed for it in inst.items):
                raise InstanceError("directed edges are only supported for shortest-path followers")


def check_prices(inst: Instance, prices: PriceAssignment) -> None:
    for pid in inst.priceable_ids:
        if pid not in prices:
            raise PricingError(f"priceable item {pid!r} has no price")
        p = prices[pid]
        if p is not INF and p < 0:
            raise PricingError(f"negative price on {pid!r}")
    for key in prices:
        it = inst.item_by_id.get(key)
        if it is None:
            raise PricingError(f"price for unknown item {key!r}")
        if not it.priceable:
            raise PricingError(f"price given for fixed item {key!r}")


def uniform_prices(inst: Instance, price: ExactNumber) -> dict[str, ExactNumber]:
    return {pid: price for pid in inst.priceable_ids}


def item_cost(inst: Instance, prices: PriceAssignment, item_id: str) -> ExactNumber:
    it = inst.item_by_id[item_id]
    if it.priceable:
        try:
            return prices[item_id]
        except KeyError:
            raise PricingError(f"priceable item {item_id!r} has no price") from None
    return it.cost


def weight_and_revenue(inst: Instance, prices: PriceAssignment, chosen) -> tuple[ExactNumber, ExactNumber]:
    """Return ``(w(S), r(S))`` for the item set ``chosen``."""
    weight = Fraction(0)
    revenue = Fraction(0)
    for iid in chosen:
        it = inst.item_by_id.get(iid)
        if it is None:
            raise InstanceError(f"unknown item id {iid!r}")
        if it.priceable:
            p = item_cost(inst, prices, iid)
            weight = weight + p
            revenue = revenue + p
        else:
            weight = weight + it.cost
    return weight, revenue


def fixed_part(inst: Instance, chosen) -> Fraction:
    return sum((inst.item_by_id[i].cost for i in chosen if not inst.item_by_id[i].priceable), Fraction(0))


def priceable_part(inst: Instance, chosen) -> frozenset[str]:
    return frozenset(i for i in chosen if inst.item_by_id[i].priceable)
