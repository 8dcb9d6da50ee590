from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stackprice.core import instance_from_dict
from stackprice.core.exact import harmonic
from stackprice.instances import RandomParams, gen_harmonic, gen_random
from stackprice.singleprice import (candidate_grid, delta_upper_bound, guarantee_factor,
                                    revenue_at_single_price, run_single_price)
from stackprice.analysis import full_profile

from conftest import example_a_doc

F = Fraction


class TestGrid:
    def test_example_a(self, example_a):
        grid = candidate_grid(example_a, F(1, 2))
        assert grid == [F(2, 3), F(1), F(3, 2), F(9, 4), F(27, 8), F(81, 16)]

    def test_epsilon_one(self):
        inst = instance_from_dict(example_a_doc("1"))
        assert candidate_grid(inst, F(1)) == [F(1, 2), F(1)]

    def test_large_costs_extend_top(self):
        inst = instance_from_dict(example_a_doc("5000"))
        grid = candidate_grid(inst, F(1))
        assert grid[-1] >= 5000 and grid[-2] < 5000

    @pytest.mark.parametrize("eps", [0, -1, F(-1, 2)])
    def test_bad_epsilon(self, example_a, eps):
        with pytest.raises(ValueError):
            candidate_grid(example_a, eps)

    def test_no_priceable(self):
        doc = example_a_doc()
        doc["items"] = [i for i in doc["items"] if i["kind"] == "fixed"]
        inst = instance_from_dict(doc)
        assert candidate_grid(inst, F(1, 4)) == []
        rep = run_single_price(inst, F(1, 4))
        assert rep.revenue == 0 and rep.prices == {}


def test_harmonic_revenue_by_price():
    inst = gen_harmonic(2)
    assert [revenue_at_single_price(inst, F(p))[0] for p in (1, 2, 3)] == [2, 2, 0]


def test_example_a_run(example_a):
    rep = run_single_price(example_a, F(1, 2))
    assert rep.diagnostics["best_price"] == F(27, 8)
    assert rep.revenue == F(27, 8)
    assert F(5) / rep.revenue == F(40, 27)


def test_smallest_price_wins_ties():
    rep = run_single_price(gen_harmonic(2), F(1, 4))
    grid = candidate_grid(gen_harmonic(2), F(1, 4))
    best = max(revenue_at_single_price(gen_harmonic(2), p)[0] for p in grid)
    first = next(p for p in grid if revenue_at_single_price(gen_harmonic(2), p)[0] == best)
    assert rep.diagnostics["best_price"] == first


def test_guarantee_factor_selection():
    assert guarantee_factor(gen_harmonic(3), F(1, 4)) == ("(1+eps)H_m", F(5, 4) * harmonic(3))
    multi = gen_random(RandomParams(seed=3, followers=("shortest_path",) * 3))
    assert guarantee_factor(multi, F(1))[0] == "(1+eps)(H_k+H_m)"
    weighted = gen_random(RandomParams(seed=3, followers=("shortest_path",) * 2,
                                       demand_range=(F(1, 2), F(4))))
    if weighted.weighted:
        assert guarantee_factor(weighted, F(1))[1] == 2 * weighted.m ** 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_follower_order_irrelevant(seed):
    from dataclasses import replace
    inst = gen_random(RandomParams(seed=seed, followers=("shortest_path",) * 3))
    flipped = replace(inst, followers=tuple(reversed(inst.followers)))
    a, b = run_single_price(inst, F(1, 4)), run_single_price(flipped, F(1, 4))
    assert a.revenue == b.revenue and a.diagnostics["best_price"] == b.diagnostics["best_price"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F(1, 4), F(1, 2), F(1)]),
       st.sampled_from([("shortest_path",), ("spanning_tree",)]))
def test_every_threshold_has_a_grid_point_just_below(seed, eps, goals):
    inst = gen_random(RandomParams(seed=seed, followers=goals))
    grid = candidate_grid(inst, eps)
    for theta in full_profile(inst, 0).thetas:
        assert any(theta / (1 + eps) <= p <= theta for p in grid)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_revenue_below_delta_bound(seed):
    inst = gen_random(RandomParams(seed=seed))
    rep = run_single_price(inst, F(1, 4))
    assert rep.revenue <= delta_upper_bound(inst)
