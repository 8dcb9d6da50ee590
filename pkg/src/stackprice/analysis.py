"""Threshold prices and the upper convex hull of (j, Delta_j).

c_j is the cheapest fixed-cost part of a feasible subnetwork with at most j
priceable items and Delta_j = c_0 - c_j.  Thresholds are the prices at which
the follower's uniform-price response drops to fewer priceable items; the
true thresholds sit exactly at the vertices of the upper hull.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core.exact import format_number, lcm_of_denominators
from .core.model import SHORTEST_PATH, Instance, UnsupportedError, fixed_part, priceable_part, uniform_prices
from .followers import baseline_cost, best_response


@dataclass(frozen=True)
class ThresholdProfile:
    """``points`` holds (j, c_j, Delta_j); ``thetas[k]`` belongs to ``hull[k+1]``."""

    points: tuple[tuple[int, Fraction, Fraction], ...]
    hull: tuple[int, ...]
    thetas: tuple[Fraction, ...]

    def delta(self, j: int) -> Fraction:
        for jj, _, d in self.points:
            if jj == j:
                return d
        raise KeyError(j)


class MalformedDeltasError(ValueError):
    pass


def hull_from_deltas(deltas: Sequence[Fraction]) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """Upper hull indices of the points (j, deltas[j]) and their thresholds.

    Collinear points are dropped and so is the flat tail after the maximum;
    theta for hull index i_k is the slope of the segment ending there.
    """
    deltas = [Fraction(d) for d in deltas]
    if not deltas or deltas[0] != 0:
        raise MalformedDeltasError("deltas[0] must be 0")
    for j in range(1, len(deltas)):
        if deltas[j] < deltas[j - 1]:
            raise MalformedDeltasError(f"Delta decreases at j={j}")
    hull: list[int] = []
    for j, d in enumerate(deltas):
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            # drop i1 unless it is strictly above the chord i0 -> j
            if (deltas[i1] - deltas[i0]) * (j - i0) <= (d - deltas[i0]) * (i1 - i0):
                hull.pop()
            else:
                break
        hull.append(j)
    while len(hull) >= 2 and deltas[hull[-1]] == deltas[hull[-2]]:
        hull.pop()
    thetas = tuple(
        (deltas[b] - deltas[a]) / (b - a) for a, b in zip(hull, hull[1:])
    )
    return tuple(hull), thetas


def constrained_fixed_cost(inst: Instance, follower_index: int, j: int) -> Fraction:
    """c_j: Dijkstra on (vertex, #priceable) states for paths, enumeration otherwise."""
    if inst.followers[follower_index].goal == SHORTEST_PATH:
        return _sp_fixed_costs(inst, follower_index, j)[j]
    return fixed_cost_profile(inst, follower_index)[min(j, inst.m)]


def _sp_fixed_costs(inst: Instance, idx: int, jmax: int) -> list[Fraction]:
    spec = inst.followers[idx]
    if spec.goal != SHORTEST_PATH:
        raise UnsupportedError("layered fixed-cost computation needs a shortest-path follower")
    if not 0 <= jmax <= inst.m:
        raise ValueError(f"j must lie in [0, {inst.m}]")
    out: dict[str, list[tuple[str, Fraction, int]]] = {v: [] for v in inst.vertices}
    for it in inst.items:
        if it.u == it.v:
            continue
        cost, used = (Fraction(0), 1) if it.priceable else (it.cost, 0)
        out[it.u].append((it.v, cost, used))
        if not it.directed:
            out[it.v].append((it.u, cost, used))
    dist = {(spec.source, 0): Fraction(0)}
    heap = [(Fraction(0), 0, spec.source)]
    while heap:
        d, c, u = heapq.heappop(heap)
        if d > dist.get((u, c), d):
            continue
        for w, cost, used in out[u]:
            nc = c + used
            if nc > jmax:
                continue
            nd = d + cost
            if nd < dist.get((w, nc), nd + 1):
                dist[(w, nc)] = nd
                heapq.heappush(heap, (nd, nc, w))
    result = []
    best = None
    for j in range(jmax + 1):
        d = dist.get((spec.sink, j))
        if d is not None and (best is None or d < best):
            best = d
        if best is None:
            raise UnsupportedError("follower has no all-fixed path")
        result.append(best)
    return result


def fixed_cost_profile(inst: Instance, follower_index: int) -> list[Fraction]:
    """[c_0, ..., c_m]; layered Dijkstra for paths, enumeration otherwise."""
    if inst.followers[follower_index].goal == SHORTEST_PATH:
        return _sp_fixed_costs(inst, follower_index, inst.m)
    from .oracle.enumerate import enumerate_feasible

    best: dict[int, Fraction] = {}
    for s in enumerate_feasible(inst, follower_index):
        n = len(priceable_part(inst, s))
        c = fixed_part(inst, s)
        if n not in best or c < best[n]:
            best[n] = c
    out = []
    cur = None
    for j in range(inst.m + 1):
        if j in best and (cur is None or best[j] < cur):
            cur = best[j]
        if cur is None:
            raise UnsupportedError("follower has no all-fixed subnetwork")
        out.append(cur)
    return out


def full_profile(inst: Instance, follower_index: int) -> ThresholdProfile:
    """Profile with every (j, c_j, Delta_j), hull taken from the Delta values."""
    cs = fixed_cost_profile(inst, follower_index)
    deltas = [cs[0] - c for c in cs]
    hull, thetas = hull_from_deltas(deltas)
    points = tuple((j, cs[j], deltas[j]) for j in range(len(cs)))
    return ThresholdProfile(points, hull, thetas)


def _line_at(inst: Instance, idx: int, price: Fraction) -> tuple[int, Fraction]:
    r = best_response(inst, idx, uniform_prices(inst, price))
    return len(priceable_part(inst, r.chosen)), fixed_part(inst, r.chosen)


def parametric_profile(inst: Instance, follower_index: int) -> ThresholdProfile:
    """Hull points and true thresholds from uniform-price best responses only.

    Recursively probes the intersection of the two envelope lines found at
    the ends of a price interval until every envelope line is known.
    """
    m = inst.m
    c0 = baseline_cost(inst, follower_index)
    if m == 0:
        return ThresholdProfile(((0, c0, Fraction(0)),), (0,), ())
    d = lcm_of_denominators(inst.fixed_costs())
    # below every positive threshold (>= 1/(mD)) the response is the cheapest
    # fixed part with the fewest priceable items
    lo = _line_at(inst, follower_index, Fraction(1, 2 * m * d))
    hi = _line_at(inst, follower_index, c0 * (m + 1) + 1)
    if hi[0] != 0:
        raise AssertionError("response above every threshold must avoid priceable items")
    lines = {lo[0]: lo[1], hi[0]: hi[1]}
    breaks: dict[int, Fraction] = {}

    def split(a: tuple[int, Fraction], b: tuple[int, Fraction]) -> None:
        (k1, c1), (k2, c2) = a, b
        if k1 == k2:
            return
        cross = (c2 - c1) / (k1 - k2)
        k, c = _line_at(inst, follower_index, cross)
        if k == k1:
            breaks[k1] = cross
            return
        lines[k] = c
        split(a, (k, c))
        split((k, c), b)

    split(lo, hi)
    hull = tuple(sorted(lines))
    points = tuple((j, lines[j], c0 - lines[j]) for j in hull)
    thetas = tuple(breaks[j] for j in hull[1:])
    return ThresholdProfile(points, hull, thetas)


def revenue_upper_bound(profile: ThresholdProfile) -> Fraction:
    """Delta at the last hull point; r* never exceeds it."""
    return profile.delta(profile.hull[-1])


def profile_table(profile: ThresholdProfile) -> str:
    """Tab-separated j, c_j, Delta_j, hull flag and theta (hull points only)."""
    theta_of = dict(zip(profile.hull[1:], profile.thetas))
    rows = ["j\tc_j\tDelta_j\thull\ttheta"]
    for j, c, d in profile.points:
        on_hull = j in profile.hull
        theta = format_number(theta_of[j]) if j in theta_of else "-"
        rows.append(f"{j}\t{format_number(c)}\t{format_number(d)}\t{'yes' if on_hull else 'no'}\t{theta}")
    return "\n".join(rows)
