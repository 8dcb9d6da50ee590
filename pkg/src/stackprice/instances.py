"""Instance generators: harmonic tightness family, the two reductions from
item pricing, and seeded random instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core.exact import harmonic, to_exact
from .core.model import (
    EDGE_GAME,
    FIXED,
    PRICEABLE,
    SHORTEST_PATH,
    SPANNING_TREE,
    VERTEX_COVER,
    VERTEX_GAME,
    Edge,
    FollowerSpec,
    Instance,
    InstanceError,
    Item,
)
from .core.validate import validate


def gen_harmonic(m: int) -> Instance:
    """Path s=v0..vm of priceable edges e_j plus fixed shortcuts f_j=(v_j, t).

    Shortcut f_j costs m(H_m - H_j), so c_j = m(H_m - H_j) and every
    threshold m/j is a true threshold.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    names = ["s"] + [f"v{j}" for j in range(1, m)] + ["t"]
    items = [Item(f"e{j}", PRICEABLE, u=names[j - 1], v=names[j]) for j in range(1, m + 1)]
    hm = harmonic(m)
    for j in range(m):
        items.append(Item(f"f{j}", FIXED, m * (hm - harmonic(j)), u=names[j], v="t"))
    return Instance(EDGE_GAME, tuple(names), tuple(items), (FollowerSpec(SHORTEST_PATH, "s", "t"),))


def gen_from_single_minded(customers: Sequence[tuple[Sequence[str], object]]) -> Instance:
    """Bipartite vertex game: priceable product vertices, one fixed vertex per
    customer (cost = budget) joined to its bundle, one cover follower each."""
    products: list[str] = []
    items: list[Item] = []
    edges: list[Edge] = []
    followers: list[FollowerSpec] = []
    for j, (bundle, budget) in enumerate(customers):
        bundle = list(dict.fromkeys(bundle))
        if not bundle:
            raise InstanceError(f"customer {j} has an empty bundle")
        budget = to_exact(budget)
        if budget < 0:
            raise InstanceError(f"customer {j} has a negative budget")
        cid = f"c{j}"
        items.append(Item(cid, FIXED, budget, vertex=cid))
        eids = []
        for p in bundle:
            if p not in products:
                products.append(p)
            eid = f"{cid}:{p}"
            edges.append(Edge(eid, cid, p))
            eids.append(eid)
        followers.append(FollowerSpec(VERTEX_COVER, edges=tuple(eids)))
    items = [Item(p, PRICEABLE, vertex=p) for p in products] + items
    vertices = tuple(products) + tuple(f"c{j}" for j in range(len(customers)))
    return Instance(VERTEX_GAME, vertices, tuple(items), tuple(followers), tuple(edges))


def gen_from_unit_demand(customers: Sequence[tuple[Sequence[str], object, object]]) -> Instance:
    """Directed shortest-path game with one priceable link per product.

    Customer j gets terminals s_j, t_j, zero-cost connectors to and from each
    alternative's link and a direct fixed edge whose cost is the budget.
    """
    products: list[str] = []
    items: list[Item] = []
    followers: list[FollowerSpec] = []
    vertices: list[str] = []
    for j, (alts, budget, demand) in enumerate(customers):
        alts = list(dict.fromkeys(alts))
        if not alts:
            raise InstanceError(f"customer {j} has no alternatives")
        s, t = f"s{j}", f"t{j}"
        vertices += [s, t]
        items.append(Item(f"b{j}", FIXED, to_exact(budget), u=s, v=t, directed=True))
        for p in alts:
            if p not in products:
                products.append(p)
            items.append(Item(f"in{j}:{p}", FIXED, Fraction(0), u=s, v=f"u:{p}", directed=True))
            items.append(Item(f"out{j}:{p}", FIXED, Fraction(0), u=f"w:{p}", v=t, directed=True))
        followers.append(FollowerSpec(SHORTEST_PATH, s, t, demand=to_exact(demand)))
    for p in products:
        vertices += [f"u:{p}", f"w:{p}"]
        items.append(Item(p, PRICEABLE, u=f"u:{p}", v=f"w:{p}", directed=True))
    return Instance(EDGE_GAME, tuple(vertices), tuple(items), tuple(followers))


class Rng:
    """PCG64 stream; draws derive from raw 64-bit outputs only, so a seed
    yields the same instance on every platform and numpy version."""

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed)

    def u64(self) -> int:
        return int(self._bits.random_raw())

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.u64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def chance(self, p: Fraction) -> bool:
        p = Fraction(p)
        return self.below(p.denominator) < p.numerator

    def pick(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, seq: list) -> list:
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
        return seq


@dataclass(frozen=True)
class RandomParams:
    """Knobs for :func:`gen_random`.

    ``kind`` is ``"edge"`` (shortest-path / spanning-tree followers given by
    ``followers``) or ``"bipartite"`` (one vertex-cover follower).
    Probabilities are exact fractions; costs are integers in ``cost_range``
    divided by ``denominator``.
    """

    seed: int = 1
    kind: str = "edge"
    n_vertices: int = 6
    max_edges: int = 12
    edge_prob: Fraction = Fraction(1, 2)
    priceable_prob: Fraction = Fraction(1, 2)
    cost_range: tuple[int, int] = (1, 10)
    denominator: int = 1
    followers: tuple[str, ...] = (SHORTEST_PATH,)
    directed_prob: Fraction = Fraction(0)
    demand_range: tuple[Fraction, Fraction] | None = None
    two_sided: bool = False
    no_priceable: bool = False

    def __post_init__(self):
        if self.n_vertices < 2:
            raise ValueError("need at least two vertices")
        for p in (self.edge_prob, self.priceable_prob, self.directed_prob):
            if not 0 <= Fraction(p) <= 1:
                raise ValueError("probabilities must lie in [0, 1]")
        lo, hi = self.cost_range
        if lo < 0 or hi < lo:
            raise ValueError("bad cost range")
        if self.denominator < 1:
            raise ValueError("denominator must be >= 1")
        if self.demand_range is not None and Fraction(self.demand_range[0]) < 0:
            raise ValueError("demands must be >= 0")


@dataclass(frozen=True)
class GeneratorParams:
    """Family name plus its parameters, as taken by the ``gen`` command."""

    family: str
    m: int = 1
    customers: tuple = ()
    random: RandomParams = field(default_factory=RandomParams)


def generate(params: GeneratorParams) -> Instance:
    if params.family == "harmonic":
        return gen_harmonic(params.m)
    if params.family == "single_minded":
        return gen_from_single_minded(params.customers)
    if params.family == "unit_demand":
        return gen_from_unit_demand(params.customers)
    if params.family == "random":
        return gen_random(params.random)
    raise ValueError(f"unknown family {params.family!r}")


def _cost(rng: Rng, p: RandomParams) -> Fraction:
    return Fraction(rng.between(*p.cost_range), p.denominator)


def gen_random(p: RandomParams) -> Instance:
    """Seeded random instance that always validates."""
    rng = Rng(p.seed)
    if p.kind == "bipartite":
        inst = _random_bipartite(rng, p)
    elif p.kind == "edge":
        inst = _random_edge_game(rng, p)
    else:
        raise ValueError(f"unknown random kind {p.kind!r}")
    report = validate(inst)
    if not report.ok:  # pragma: no cover - fallbacks are injected above
        raise AssertionError(f"generated instance fails validation: {report.message}")
    return inst


def _random_edge_game(rng: Rng, p: RandomParams) -> Instance:
    n = p.n_vertices
    names = [f"v{i}" for i in range(n)]
    wants_tree = SPANNING_TREE in p.followers
    directed_ok = not wants_tree
    terminals = []
    for goal in p.followers:
        if goal == SHORTEST_PATH:
            s = rng.below(n)
            t = rng.below(n - 1)
            if t >= s:
                t += 1
            terminals.append((names[s], names[t]))
        elif goal != SPANNING_TREE:
            raise ValueError(f"edge games support shortest_path/spanning_tree, not {goal!r}")
    # reserve room for fallback edges
    reserve = (n - 1) if wants_tree else len(terminals)
    budget = max(1, p.max_edges - reserve)
    pairs = [(a, b) for a in range(n) for b in range(n) if a < b]
    rng.shuffle(pairs)
    raw = []
    for a, b in pairs:
        if len(raw) >= budget:
            break
        if rng.chance(p.edge_prob):
            directed = directed_ok and rng.chance(p.directed_prob)
            if directed and rng.chance(Fraction(1, 2)):
                a, b = b, a
            priceable = not p.no_priceable and rng.chance(p.priceable_prob)
            raw.append((names[a], names[b], directed, priceable))
    items: list[Item] = []
    ne = nf = 0

    def add(u, v, directed, priceable):
        nonlocal ne, nf
        if priceable:
            ne += 1
            items.append(Item(f"e{ne}", PRICEABLE, u=u, v=v, directed=directed))
        else:
            nf += 1
            items.append(Item(f"f{nf}", FIXED, _cost(rng, p), u=u, v=v, directed=directed))

    for u, v, directed, priceable in raw:
        add(u, v, directed, priceable)
    if wants_tree:
        # fixed edges must span: join fixed components along a random order
        parent = {v: v for v in names}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for it in items:
            if not it.priceable:
                parent[find(it.u)] = find(it.v)
        order = rng.shuffle(list(names))
        for a, b in zip(order, order[1:]):
            if find(a) != find(b):
                parent[find(a)] = find(b)
                add(a, b, False, False)
    followers = []
    ti = iter(terminals)
    for goal in p.followers:
        demand = _demand(rng, p)
        if goal == SHORTEST_PATH:
            s, t = next(ti)
            followers.append(FollowerSpec(SHORTEST_PATH, s, t, demand=demand))
            if not _fixed_path_exists(items, s, t):
                hi = p.cost_range[1]
                nf += 1
                cost = Fraction(rng.between(hi, 2 * hi + 1), p.denominator)
                items.append(Item(f"f{nf}", FIXED, cost, u=s, v=t))
        else:
            followers.append(FollowerSpec(SPANNING_TREE, demand=demand))
    return Instance(EDGE_GAME, tuple(names), tuple(items), tuple(followers))


def _demand(rng: Rng, p: RandomParams) -> Fraction:
    if p.demand_range is None:
        return Fraction(1)
    lo, hi = (Fraction(x) for x in p.demand_range)
    # quarter steps between lo and hi
    steps = int((hi - lo) * 4)
    return lo + Fraction(rng.between(0, steps), 4)


def _fixed_path_exists(items, s, t) -> bool:
    out: dict[str, list[str]] = {}
    for it in items:
        if it.priceable:
            continue
        out.setdefault(it.u, []).append(it.v)
        if not it.directed:
            out.setdefault(it.v, []).append(it.u)
    seen, stack = {s}, [s]
    while stack:
        u = stack.pop()
        if u == t:
            return True
        for w in out.get(u, []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _random_bipartite(rng: Rng, p: RandomParams) -> Instance:
    n = p.n_vertices
    na = max(1, n // 2)
    nb = max(1, n - na)
    side_a = [f"a{i}" for i in range(1, na + 1)]
    side_b = [f"b{i}" for i in range(1, nb + 1)]
    priceable = set()
    for v in side_a:
        if not p.no_priceable and rng.chance(p.priceable_prob):
            priceable.add(v)
    if p.two_sided:
        for v in side_b:
            if not p.no_priceable and rng.chance(p.priceable_prob):
                priceable.add(v)
    edges = []
    for a in side_a:
        for b in side_b:
            if len(edges) >= p.max_edges:
                break
            if a in priceable and b in priceable:
                continue
            if rng.chance(p.edge_prob):
                edges.append(Edge(f"{a}{b}", a, b))
    if not edges:
        a, b = side_a[0], side_b[0]
        if a in priceable and b in priceable:
            priceable.discard(b)
        edges.append(Edge(f"{a}{b}", a, b))
    items = []
    for v in side_a + side_b:
        if v in priceable:
            items.append(Item(v, PRICEABLE, vertex=v))
        else:
            items.append(Item(v, FIXED, _cost(rng, p), vertex=v))
    follower = FollowerSpec(VERTEX_COVER, edges=tuple(e.id for e in edges), demand=_demand(rng, p))
    return Instance(VERTEX_GAME, tuple(side_a + side_b), tuple(items), (follower,), tuple(edges))
