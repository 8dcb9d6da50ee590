"""JSON instance file format.

Example::

    {"game": "edge",
     "vertices": ["s", "t"],
     "items": [{"id": "f1", "kind": "fixed", "cost": "5", "u": "s", "v": "t"},
               {"id": "e1", "kind": "priceable", "u": "s", "v": "t"}],
     "followers": [{"type": "shortest_path", "source": "s", "sink": "t"}]}

Vertex games list their items with a ``vertex`` field and add a top-level
``edges`` array of ``{id, u, v}`` that vertex-cover followers refer to.
Numbers are strings in decimal or rational syntax and decode exactly.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .exact import INF, format_number, parse_number
from .model import (
    EDGE_GAME,
    FIXED,
    PRICEABLE,
    VERTEX_COVER,
    Edge,
    FollowerSpec,
    Instance,
    InstanceError,
    Item,
    SHORTEST_PATH,
)


def _number(raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise InstanceError(f"{where}: numbers must be strings (or integers), got {raw!r}")
    try:
        x = parse_number(str(raw))
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from None
    if x is INF:
        raise InstanceError(f"{where}: infinite value not allowed")
    return x


def _str(obj: dict, key: str, where: str, required: bool = True):
    val = obj.get(key)
    if val is None:
        if required:
            raise InstanceError(f"{where}: missing field {key!r}")
        return None
    if not isinstance(val, str):
        raise InstanceError(f"{where}: field {key!r} must be a string")
    return val


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    game = doc.get("game", EDGE_GAME)
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise InstanceError("'vertices' must be an array of strings")
    items = []
    for n, raw in enumerate(doc.get("items", [])):
        where = f"items[{n}]"
        if not isinstance(raw, dict):
            raise InstanceError(f"{where}: must be an object")
        iid = _str(raw, "id", where)
        kind = raw.get("kind")
        if kind not in (FIXED, PRICEABLE):
            raise InstanceError(f"{where}: kind must be 'fixed' or 'priceable'")
        cost = None
        if "cost" in raw:
            cost = _number(raw["cost"], f"{where}.cost")
        if game == EDGE_GAME:
            items.append(Item(iid, kind, cost, u=_str(raw, "u", where), v=_str(raw, "v", where),
                              directed=bool(raw.get("directed", False))))
        else:
            vertex = _str(raw, "vertex", where, required=False) or iid
            items.append(Item(iid, kind, cost, vertex=vertex))
    edges = []
    for n, raw in enumerate(doc.get("edges", [])):
        where = f"edges[{n}]"
        if not isinstance(raw, dict):
            raise InstanceError(f"{where}: must be an object")
        edges.append(Edge(_str(raw, "id", where), _str(raw, "u", where), _str(raw, "v", where)))
    followers = []
    for n, raw in enumerate(doc.get("followers", [])):
        where = f"followers[{n}]"
        if not isinstance(raw, dict):
            raise InstanceError(f"{where}: must be an object")
        goal = raw.get("type")
        demand = _number(raw.get("demand", "1"), f"{where}.demand")
        eids = raw.get("edges", [])
        if not isinstance(eids, list) or not all(isinstance(e, str) for e in eids):
            raise InstanceError(f"{where}: 'edges' must be an array of strings")
        if goal == SHORTEST_PATH:
            fs = FollowerSpec(goal, _str(raw, "source", where), _str(raw, "sink", where), demand=demand)
        elif goal == VERTEX_COVER:
            fs = FollowerSpec(goal, edges=tuple(eids), demand=demand)
        else:
            fs = FollowerSpec(goal, demand=demand)
        followers.append(fs)
    return Instance(game, tuple(vertices), tuple(items), tuple(followers), tuple(edges))


def parse_instance(text: str) -> Instance:
    """Decode an instance from JSON text; JSON syntax errors report line/column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc)


def load_instance(path) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def instance_to_dict(inst: Instance) -> dict:
    items = []
    for it in inst.items:
        d = {"id": it.id, "kind": it.kind}
        if it.cost is not None:
            d["cost"] = format_number(it.cost)
        if inst.game == EDGE_GAME:
            d["u"], d["v"] = it.u, it.v
            if it.directed:
                d["directed"] = True
        else:
            d["vertex"] = it.vertex
        items.append(d)
    followers = []
    for f in inst.followers:
        d = {"type": f.goal}
        if f.goal == SHORTEST_PATH:
            d["source"], d["sink"] = f.source, f.sink
        elif f.goal == VERTEX_COVER:
            d["edges"] = list(f.edges)
        if f.demand != 1:
            d["demand"] = format_number(f.demand)
        followers.append(d)
    doc = {"game": inst.game, "vertices": list(inst.vertices), "items": items}
    if inst.edges:
        doc["edges"] = [{"id": e.id, "u": e.u, "v": e.v} for e in inst.edges]
    doc["followers"] = followers
    return doc


def serialize_instance(inst: Instance, indent: int | None = 2) -> str:
    return json.dumps(instance_to_dict(inst), indent=indent)


def canonical_text(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), sort_keys=True, separators=(",", ":"))


def instance_digest(inst: Instance) -> str:
    """SHA-256 of the canonical serialization; stable across platforms."""
    return hashlib.sha256(canonical_text(inst).encode("utf-8")).hexdigest()


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(serialize_instance(inst) + "\n", encoding="utf-8")
