"""Shortest-augmenting-path max flow over ordered values.

Capacities may be Fractions, lexicographic pairs (see
:class:`stackprice.followers.PerturbedWeight`) or :data:`INF`.  Anything with
``+``, ``-`` and a total order works; termination of breadth-first
augmentation does not depend on the value type.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .core.exact import INF

SOURCE = "__s__"
SINK = "__t__"


class UnboundedFlowError(ArithmeticError):
    """An augmenting path of infinite capacity exists."""


@dataclass
class Arc:
    tail: int
    head: int
    cap: Any
    flow: Any


@dataclass
class Augmentation:
    phase: int
    path: tuple[str, ...]
    bottleneck: Any


@dataclass
class FlowNetwork:
    zero: Any
    nodes: list[str] = field(default_factory=list)
    arcs: list[Arc] = field(default_factory=list)
    adj: list[list[tuple[int, bool]]] = field(default_factory=list)
    index: dict[str, int] = field(default_factory=dict)
    # bipartite metadata filled by stackvc.build_dual_network
    side_a: tuple[str, ...] = ()
    side_b: tuple[str, ...] = ()
    item_of: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for name in (SOURCE, SINK):
            self.node(name)

    def node(self, name: str) -> int:
        idx = self.index.get(name)
        if idx is None:
            idx = len(self.nodes)
            self.index[name] = idx
            self.nodes.append(name)
            self.adj.append([])
        return idx

    def add_arc(self, tail: str, head: str, cap) -> int:
        t, h = self.node(tail), self.node(head)
        self.arcs.append(Arc(t, h, cap, self.zero))
        a = len(self.arcs) - 1
        self.adj[t].append((a, True))
        self.adj[h].append((a, False))
        return a

    def arcs_between(self, tail: str, head: str) -> list[Arc]:
        t, h = self.index[tail], self.index[head]
        return [a for a in self.arcs if a.tail == t and a.head == h]

    def residual(self, arc: Arc, forward: bool):
        if forward:
            return INF if arc.cap is INF else arc.cap - arc.flow
        return arc.flow

    def value(self):
        s = self.index[SOURCE]
        total = self.zero
        for a, fwd in self.adj[s]:
            arc = self.arcs[a]
            if fwd:
                total = total + arc.flow
            else:
                total = total - arc.flow
        return total

    def reachable(self) -> set[int]:
        """Nodes reachable from the source in the residual network."""
        s = self.index[SOURCE]
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a, fwd in self.adj[u]:
                arc = self.arcs[a]
                w = arc.head if fwd else arc.tail
                if w not in seen and self.residual(arc, fwd) > self.zero:
                    seen.add(w)
                    queue.append(w)
        return seen

    def _shortest_augmenting_path(self):
        s, t = self.index[SOURCE], self.index[SINK]
        pred: dict[int, tuple[int, bool]] = {s: (-1, True)}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a, fwd in self.adj[u]:
                arc = self.arcs[a]
                w = arc.head if fwd else arc.tail
                if w in pred or self.residual(arc, fwd) <= self.zero:
                    continue
                pred[w] = (a, fwd)
                if w == t:
                    steps = []
                    node = t
                    while node != s:
                        a2, f2 = pred[node]
                        steps.append((a2, f2))
                        node = self.arcs[a2].tail if f2 else self.arcs[a2].head
                    steps.reverse()
                    return steps
                queue.append(w)
        return None

    def augment_to_max(self, phase: int = 1,
                       on_path: Optional[Callable[[Augmentation], None]] = None) -> int:
        """Augment along shortest residual paths until none is left.

        Starts from the current flow; returns the number of augmentations.
        """
        count = 0
        while True:
            steps = self._shortest_augmenting_path()
            if steps is None:
                return count
            bottleneck = min(self.residual(self.arcs[a], f) for a, f in steps)
            if bottleneck is INF:
                raise UnboundedFlowError("augmenting path of infinite capacity")
            path = [self.nodes[self.index[SOURCE]]]
            for a, f in steps:
                arc = self.arcs[a]
                if f:
                    arc.flow = arc.flow + bottleneck
                    path.append(self.nodes[arc.head])
                else:
                    arc.flow = arc.flow - bottleneck
                    path.append(self.nodes[arc.tail])
            count += 1
            if on_path is not None:
                on_path(Augmentation(phase, tuple(path), bottleneck))
