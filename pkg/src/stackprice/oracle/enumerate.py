"""Explicit enumeration of a follower's inclusion-minimal feasible subnetworks."""

from __future__ import annotations

from ..core.model import SHORTEST_PATH, SPANNING_TREE, VERTEX_COVER, Instance
from ..followers import cover_graph

DEFAULT_LIMIT = 100_000


class OracleLimitError(RuntimeError):
    """The instance is too large for brute-force enumeration."""


def enumerate_feasible(inst: Instance, follower_index: int, limit: int = DEFAULT_LIMIT) -> list[frozenset[str]]:
    """All simple paths / spanning trees / minimal vertex covers, sorted.

    Raises :class:`OracleLimitError` as soon as more than ``limit`` sets
    would be produced.
    """
    goal = inst.followers[follower_index].goal
    if goal == SHORTEST_PATH:
        found = _paths(inst, follower_index, limit)
    elif goal == SPANNING_TREE:
        found = _trees(inst, limit)
    elif goal == VERTEX_COVER:
        found = _covers(inst, follower_index, limit)
    else:  # pragma: no cover
        raise ValueError(goal)
    return sorted(found, key=lambda s: sorted(s))


def _bump(found: list, limit: int) -> None:
    if len(found) > limit:
        raise OracleLimitError(f"more than {limit} feasible subnetworks")


def _paths(inst: Instance, idx: int, limit: int) -> list[frozenset[str]]:
    spec = inst.followers[idx]
    out: dict[str, list[tuple[str, str]]] = {v: [] for v in inst.vertices}
    for it in sorted(inst.items, key=lambda it: it.id):
        if it.u == it.v:
            continue
        out[it.u].append((it.id, it.v))
        if not it.directed:
            out[it.v].append((it.id, it.u))
    found: list[frozenset[str]] = []
    if spec.source == spec.sink:
        return [frozenset()]
    visited = {spec.source}
    stack: list[str] = []

    def dfs(u: str) -> None:
        for eid, w in out[u]:
            if w in visited:
                continue
            stack.append(eid)
            if w == spec.sink:
                found.append(frozenset(stack))
                _bump(found, limit)
            else:
                visited.add(w)
                dfs(w)
                visited.discard(w)
            stack.pop()

    dfs(spec.source)
    return found


def _trees(inst: Instance, limit: int) -> list[frozenset[str]]:
    edges = sorted((it for it in inst.items if it.u != it.v), key=lambda it: it.id)
    n = len(inst.vertices)
    found: list[frozenset[str]] = []
    if n <= 1:
        return [frozenset()]
    parent = {v: v for v in inst.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    # components still mergeable using edges[pos:]
    def connectable(pos: int) -> bool:
        p2 = {v: find(v) for v in inst.vertices}
        comp = {r: r for r in p2.values()}

        def f2(x):
            while comp[x] != x:
                x = comp[x]
            return x

        groups = len(comp)
        for it in edges[pos:]:
            a, b = f2(p2[it.u]), f2(p2[it.v])
            if a != b:
                comp[a] = b
                groups -= 1
        return groups == 1

    chosen: list[str] = []

    def rec(pos: int) -> None:
        if len(chosen) == n - 1:
            found.append(frozenset(chosen))
            _bump(found, limit)
            return
        if pos == len(edges) or not connectable(pos):
            return
        it = edges[pos]
        ru, rv = find(it.u), find(it.v)
        if ru != rv:
            # include: contract the edge
            parent[ru] = rv
            chosen.append(it.id)
            rec(pos + 1)
            chosen.pop()
            parent[ru] = ru
        # exclude: delete the edge
        rec(pos + 1)

    rec(0)
    return found


def _covers(inst: Instance, idx: int, limit: int) -> list[frozenset[str]]:
    items, pairs = cover_graph(inst, idx)
    n = len(items)
    if n > 24:
        raise OracleLimitError(f"subset scan over {n} vertices")
    bit = {v: 1 << i for i, v in enumerate(items)}
    masks = [bit[a] | bit[b] for _, a, b in pairs]
    covers = [s for s in range(1 << n) if all(s & e for e in masks)]
    cover_set = set(covers)
    found = []
    for s in covers:
        if any((s & ~b) in cover_set for b in bit.values() if s & b):
            continue
        found.append(frozenset(v for v in items if s & bit[v]))
        _bump(found, limit)
    return found
