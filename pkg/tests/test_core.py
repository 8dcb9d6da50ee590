from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stackprice.core import (
    INF,
    InfinityArithmeticError,
    InstanceError,
    format_number,
    instance_from_dict,
    parse_instance,
    parse_number,
    serialize_instance,
    validate,
    weight_and_revenue,
)
from stackprice.core.io import instance_digest
from stackprice.core.model import PricingError, fixed_part
from stackprice.instances import RandomParams, gen_harmonic, gen_random

from conftest import example_a_doc
import json


class TestExactNumber:
    def test_lowest_terms(self):
        x = parse_number("10/4")
        assert (x.numerator, x.denominator) == (5, 2)
        assert parse_number("-3/6").denominator == 2

    def test_decimal_is_exact(self):
        assert parse_number("5.25") == Fraction(21, 4)
        assert parse_number("0.1") == Fraction(1, 10)

    def test_infinity_order(self):
        assert INF > Fraction(10**30)
        assert Fraction(10**30) < INF
        assert not (INF < Fraction(0))
        assert INF == INF and INF != Fraction(1)
        assert max(Fraction(3), INF) is INF

    def test_infinity_arithmetic(self):
        assert Fraction(5) + INF is INF
        assert INF + Fraction(5) is INF
        with pytest.raises(InfinityArithmeticError):
            INF * 0
        with pytest.raises(InfinityArithmeticError):
            Fraction(0) * INF

    def test_format(self):
        assert format_number(Fraction(21, 4)) == "21/4"
        assert format_number(Fraction(5)) == "5"
        assert format_number(INF) == "inf"

    @pytest.mark.parametrize("bad", ["", "abc", "1/0", "1e3", "--1"])
    def test_rejects_garbage(self, bad):
        with pytest.raises(ValueError):
            parse_number(bad)


class TestParse:
    def test_minimal(self):
        inst = parse_instance(json.dumps(example_a_doc()))
        assert inst.m == 1 and inst.k == 1
        assert inst.item_by_id["f1"].cost == 5

    def test_decimal_cost(self):
        inst = parse_instance(json.dumps(example_a_doc("5.25")))
        assert inst.item_by_id["f1"].cost == Fraction(21, 4)

    def test_rational_cost(self):
        inst = parse_instance(json.dumps(example_a_doc("1/3")))
        assert inst.item_by_id["f1"].cost == Fraction(1, 3)

    def test_syntax_error_reports_position(self):
        with pytest.raises(InstanceError, match="line 1 column"):
            parse_instance('{"game": "edge",')

    def test_unknown_vertex(self):
        doc = example_a_doc()
        doc["items"][0]["v"] = "nowhere"
        with pytest.raises(InstanceError, match="unknown vertex"):
            instance_from_dict(doc)

    def test_unknown_terminal(self):
        doc = example_a_doc()
        doc["followers"][0]["sink"] = "x"
        with pytest.raises(InstanceError):
            instance_from_dict(doc)

    def test_negative_cost(self):
        with pytest.raises(InstanceError, match="negative"):
            instance_from_dict(example_a_doc("-1"))

    def test_duplicate_id(self):
        doc = example_a_doc()
        doc["items"][1]["id"] = "f1"
        with pytest.raises(InstanceError, match="duplicate"):
            instance_from_dict(doc)

    def test_priceable_with_cost_rejected(self):
        doc = example_a_doc()
        doc["items"][1]["cost"] = "2"
        with pytest.raises(InstanceError):
            instance_from_dict(doc)

    def test_directed_tree_rejected(self):
        doc = example_a_doc()
        doc["items"][0]["directed"] = True
        doc["followers"] = [{"type": "spanning_tree"}]
        with pytest.raises(InstanceError, match="directed"):
            instance_from_dict(doc)

    def test_float_numbers_rejected(self):
        doc = example_a_doc()
        doc["items"][0]["cost"] = 5.5
        with pytest.raises(InstanceError):
            instance_from_dict(doc)


class TestValidate:
    def test_example_a(self, example_a):
        rep = validate(example_a)
        assert rep.ok and rep.baselines == (5,)

    def test_only_priceable_path(self):
        doc = example_a_doc()
        doc["items"] = doc["items"][1:]
        rep = validate(instance_from_dict(doc))
        assert not rep.ok and rep.failed_follower == 0

    def test_harmonic_two(self):
        rep = validate(gen_harmonic(2))
        assert rep.ok and rep.baselines == (3,)

    def test_vertex_cover_edge_between_priceables(self, instance_c):
        from stackprice.core.io import instance_to_dict
        doc = instance_to_dict(instance_c)
        doc["items"][2] = {"id": "b1", "kind": "priceable", "vertex": "b1"}
        rep = validate(instance_from_dict(doc))
        assert not rep.ok and rep.failed_follower == 0


class TestWeightAndRevenue:
    def test_priceable_only(self, example_a):
        assert weight_and_revenue(example_a, {"e1": Fraction(3)}, {"e1"}) == (3, 3)

    def test_fixed_only(self, example_a):
        assert weight_and_revenue(example_a, {"e1": Fraction(7)}, {"f1"}) == (5, 0)

    def test_harmonic(self):
        h = gen_harmonic(2)
        assert weight_and_revenue(h, {"e1": Fraction(2), "e2": Fraction(1)}, {"e1", "e2"}) == (3, 3)

    def test_unknown_item(self, example_a):
        with pytest.raises(InstanceError):
            weight_and_revenue(example_a, {"e1": Fraction(1)}, {"zz"})

    def test_unpriced_item(self, example_a):
        with pytest.raises(PricingError):
            weight_and_revenue(example_a, {}, {"e1"})


def _random_instances():
    return st.builds(
        lambda seed, tree: gen_random(RandomParams(
            seed=seed, n_vertices=5, max_edges=8,
            followers=("spanning_tree",) if tree else ("shortest_path",), denominator=3)),
        st.integers(0, 10**6), st.booleans())


prices_st = st.fractions(min_value=0, max_value=20, max_denominator=7)


@settings(max_examples=60, deadline=None)
@given(_random_instances(), st.data())
def test_weight_minus_revenue_is_fixed_part(inst, data):
    ids = [it.id for it in inst.items]
    chosen = data.draw(st.sets(st.sampled_from(ids)))
    p1 = {pid: data.draw(prices_st) for pid in inst.priceable_ids}
    p2 = {pid: data.draw(prices_st) for pid in inst.priceable_ids}
    w1, r1 = weight_and_revenue(inst, p1, chosen)
    w2, r2 = weight_and_revenue(inst, p2, chosen)
    assert w1 - r1 == w2 - r2 == fixed_part(inst, chosen)
    assert r1 <= w1
    positive_fixed = any(not inst.item_by_id[i].priceable and inst.item_by_id[i].cost > 0 for i in chosen)
    assert (r1 == w1) == (not positive_fixed)


@settings(max_examples=40, deadline=None)
@given(_random_instances(), st.fractions(min_value=Fraction(1, 5), max_value=7, max_denominator=5), st.data())
def test_scaling(inst, lam, data):
    from dataclasses import replace
    items = tuple(it if it.priceable else replace(it, cost=it.cost * lam) for it in inst.items)
    scaled = replace(inst, items=items)
    prices = {pid: data.draw(prices_st) for pid in inst.priceable_ids}
    chosen = data.draw(st.sets(st.sampled_from([it.id for it in inst.items])))
    w, r = weight_and_revenue(inst, prices, chosen)
    ws, rs = weight_and_revenue(scaled, {k: v * lam for k, v in prices.items()}, chosen)
    assert (ws, rs) == (w * lam, r * lam)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["sp", "mst", "vc", "vc2", "weighted"]))
def test_round_trip(seed, kind):
    params = {
        "sp": RandomParams(seed=seed, directed_prob=Fraction(1, 3), denominator=4),
        "mst": RandomParams(seed=seed, followers=("spanning_tree",)),
        "vc": RandomParams(seed=seed, kind="bipartite", n_vertices=8),
        "vc2": RandomParams(seed=seed, kind="bipartite", n_vertices=8, two_sided=True),
        "weighted": RandomParams(seed=seed, followers=("shortest_path", "spanning_tree"),
                                 demand_range=(Fraction(1, 2), Fraction(4))),
    }[kind]
    inst = gen_random(params)
    again = parse_instance(serialize_instance(inst))
    assert again == inst
    assert instance_digest(again) == instance_digest(inst)
