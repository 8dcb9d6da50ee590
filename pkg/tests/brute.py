"""Independent brute-force checks over all item subsets (tiny instances only)."""

from fractions import Fraction
from itertools import combinations, product

from stackprice.core.model import SHORTEST_PATH, SPANNING_TREE, VERTEX_COVER, weight_and_revenue


def _connects(inst, subset, s, t):
    out = {}
    for iid in subset:
        it = inst.item_by_id[iid]
        out.setdefault(it.u, []).append(it.v)
        if not it.directed:
            out.setdefault(it.v, []).append(it.u)
    seen, stack = {s}, [s]
    while stack:
        u = stack.pop()
        for w in out.get(u, []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return t in seen, seen


def is_feasible(inst, j, subset):
    spec = inst.followers[j]
    if spec.goal == SHORTEST_PATH:
        return _connects(inst, subset, spec.source, spec.sink)[0]
    if spec.goal == SPANNING_TREE:
        v0 = inst.vertices[0]
        return len(_connects(inst, subset, v0, v0)[1]) == len(inst.vertices)
    at = {it.vertex: it.id for it in inst.items}
    for eid in spec.edges:
        e = inst.edge_by_id[eid]
        if at[e.u] not in subset and at[e.v] not in subset:
            return False
    return True


def all_subsets(ids):
    for r in range(len(ids) + 1):
        yield from (frozenset(c) for c in combinations(ids, r))


def best_key(inst, j, prices):
    """min (weight, -revenue) over every feasible item subset."""
    ids = [it.id for it in inst.items if not (it.priceable and prices[it.id] is INF_)]
    best = None
    for sub in all_subsets(ids):
        if is_feasible(inst, j, sub):
            w, r = weight_and_revenue(inst, prices, sub)
            key = (w, -r)
            if best is None or key < best:
                best = key
    return best


from stackprice.core.exact import INF as INF_  # noqa: E402


def brute_revenue(inst, prices):
    total = Fraction(0)
    for j, f in enumerate(inst.followers):
        total += f.demand * -best_key(inst, j, prices)[1]
    return total


def brute_optimum_half_grid(inst, top):
    """Max revenue over prices in {0, 1/2, ..., top} for every priceable item.

    Exact for m <= 2 with integer fixed costs: LP vertices of the target
    programs have denominators dividing 2.
    """
    grid = [Fraction(n, 2) for n in range(int(2 * top) + 1)]
    best = Fraction(0)
    for combo in product(grid, repeat=inst.m):
        prices = dict(zip(inst.priceable_ids, combo))
        best = max(best, brute_revenue(inst, prices))
    return best
