from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stackprice.core import INF, instance_from_dict
from stackprice.core.model import UnsupportedError, weight_and_revenue
from stackprice.flow import SINK, SOURCE
from stackprice.followers import best_response
from stackprice.instances import RandomParams, gen_random
from stackprice.oracle import enumerate_feasible, exact_optimum
from stackprice.stackvc import (NotBipartiteError, bipartition, build_dual_network, max_flow,
                                solve_one_sided, solve_two_sided)

from conftest import instance_c_doc

F = Fraction


def _vertex_doc(items, edges):
    return {
        "game": "vertex",
        "vertices": [i["id"] for i in items],
        "items": items,
        "edges": [{"id": u + v, "u": u, "v": v} for u, v in edges],
        "followers": [{"type": "vertex_cover", "edges": [u + v for u, v in edges]}],
    }


def _fixed(v, c):
    return {"id": v, "kind": "fixed", "cost": str(c)}


def _priced(v):
    return {"id": v, "kind": "priceable"}


class TestNetwork:
    def test_shape(self, instance_c):
        net = build_dual_network(instance_c, {"a1": F(0)})
        assert net.side_a == ("a1", "a2") and net.side_b == ("b1", "b2")
        assert net.arcs_between(SOURCE, "a2")[0].cap == 3
        assert net.arcs_between("b2", SINK)[0].cap == 4
        assert net.arcs_between("a1", "b2")[0].cap is INF
        assert not net.arcs_between("a2", "b1")

    def test_cover_at_zero(self, instance_c):
        value, cut = max_flow(build_dual_network(instance_c, {"a1": F(0)}))
        assert value == 3 and cut.cover == {"a1", "a2"}

    def test_cover_at_three(self, instance_c):
        value, cut = max_flow(build_dual_network(instance_c, {"a1": F(3)}))
        assert value == 6 and cut.cost == 6

    def test_single_edge(self):
        inst = instance_from_dict(_vertex_doc([_fixed("a", 2), _fixed("b", 1)], [("a", "b")]))
        value, cut = max_flow(build_dual_network(inst, {}))
        assert value == 1 and cut.cover == {"b"}

    def test_infinite_terminal_arc_rejected(self, instance_c):
        with pytest.raises(ValueError):
            max_flow(build_dual_network(instance_c, {"a1": INF}))


def test_triangle_not_bipartite():
    inst = instance_from_dict(_vertex_doc([_priced("x"), _fixed("y", 1), _fixed("z", 1)],
                                          [("x", "y"), ("y", "z"), ("z", "x")]))
    with pytest.raises(NotBipartiteError):
        bipartition(inst)
    with pytest.raises(UnsupportedError):
        solve_one_sided(inst)


class TestOneSided:
    def test_instance_c(self, instance_c):
        trace = []
        rep = solve_one_sided(instance_c, trace)
        assert rep.prices == {"a1": F(3)} and rep.revenue == 3
        assert rep.diagnostics["c_0"] == 6 and rep.diagnostics["c_n"] == 3
        assert [(a.phase, a.path, a.bottleneck) for a in trace] == [
            (1, (SOURCE, "a2", "b2", SINK), F(3)),
            (2, (SOURCE, "a1", "b1", SINK), F(2)),
            (2, (SOURCE, "a1", "b2", SINK), F(1)),
        ]
        r = rep.per_follower[0]
        assert r.chosen == {"a1", "a2"} and r.weight == 6

    def test_no_edges(self):
        doc = _vertex_doc([_priced("a"), _fixed("b", 1)], [])
        doc["followers"] = [{"type": "vertex_cover", "edges": []}]
        rep = solve_one_sided(instance_from_dict(doc))
        assert rep.revenue == 0 and rep.prices == {"a": 0}
        assert rep.diagnostics["untouched_priceable"] == ["a"]

    def test_isolated_priceable(self):
        items = [_priced("a"), _fixed("b", 2), _priced("z")]
        rep = solve_one_sided(instance_from_dict(_vertex_doc(items, [("a", "b")])))
        assert rep.prices == {"a": F(2), "z": F(0)} and rep.revenue == 2

    def test_no_priceable(self):
        rep = solve_one_sided(instance_from_dict(_vertex_doc([_fixed("a", 1), _fixed("b", 2)], [("a", "b")])))
        assert rep.revenue == 0 and rep.prices == {}

    def test_priceables_on_both_sides_rejected(self):
        inst = instance_from_dict(_vertex_doc([_priced("a"), _priced("b")], [("a", "b")]))
        with pytest.raises(UnsupportedError):
            solve_one_sided(inst)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_flow_value_is_min_cover(seed, data):
    inst = gen_random(RandomParams(seed=seed, kind="bipartite", n_vertices=8))
    prices = {p: data.draw(st.integers(0, 10).map(F)) for p in inst.priceable_ids}
    value, cut = max_flow(build_dual_network(inst, prices))
    cheapest = min(weight_and_revenue(inst, prices, s)[0] for s in enumerate_feasible(inst, 0))
    assert value == cheapest == cut.cost
    assert weight_and_revenue(inst, prices, cut.cover)[0] == value


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_one_sided_is_optimal(seed):
    inst = gen_random(RandomParams(seed=seed, kind="bipartite", n_vertices=8))
    rep = solve_one_sided(inst)
    assert rep.revenue == exact_optimum(inst).revenue
    assert rep.revenue == rep.diagnostics["c_0"] - rep.diagnostics["c_n"]


class TestTwoSided:
    def test_path(self):
        # a1(p) - b1(2) - a2(4) - b2(p): covers {b1,a2}=6, {a1,a2}=4+p, {b1,b2}=2+p
        items = [_priced("a1"), _fixed("b1", 2), _fixed("a2", 4), _priced("b2")]
        inst = instance_from_dict(_vertex_doc(items, [("a1", "b1"), ("b1", "a2"), ("a2", "b2")]))
        rep = solve_two_sided(inst)
        assert exact_optimum(inst).revenue == 4
        assert rep.revenue == 4 and rep.diagnostics["active_side"] == "B"
        assert rep.prices == {"a1": INF, "b2": F(4)}
        assert rep.diagnostics["run_revenues"] == {"A": F(2), "B": F(4)}

    def test_one_sided_passthrough(self, instance_c):
        rep = solve_two_sided(instance_c)
        assert rep.revenue == 3 and rep.diagnostics["active_side"] == "A"

    def test_inactive_side_blocked(self):
        items = [_priced("a1"), _fixed("b1", 4), _priced("b2"), _fixed("a2", 5)]
        inst = instance_from_dict(_vertex_doc(items, [("a1", "b1"), ("a2", "b2"), ("a2", "b1")]))
        rep = solve_two_sided(inst)
        side = rep.diagnostics["active_side"]
        blocked = [p for p in inst.priceable_ids if rep.prices[p] is INF]
        assert len(blocked) == 1
        assert rep.revenue == max(rep.diagnostics["run_revenues"].values())
        assert 2 * rep.revenue >= exact_optimum(inst).revenue
        assert side in ("A", "B")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_two_sided_half_of_optimum(seed):
    inst = gen_random(RandomParams(seed=seed, kind="bipartite", n_vertices=8, two_sided=True))
    rep = solve_two_sided(inst)
    assert 2 * rep.revenue >= exact_optimum(inst).revenue
    assert best_response(inst, 0, rep.prices).revenue == rep.revenue
