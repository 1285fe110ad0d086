from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vpnhub.scripts import config
from vpnhub.scripts.embedding import (
    all_pairs_shortest_paths, allocation_cost, brute_force_placement, extract_route, hub_routing,
    induced_loads, optimal_t_hubbing, star_instance, tighten_allocation
)
from vpnhub.scripts.generate import gen_random_instance
from vpnhub.scripts.instance import Hubbing, Instance, make_instance, make_network
from vpnhub.scripts.logging import LimitError, ValidationError

from conftest import star_tree, caterpillar_tree

seeds = st.integers(min_value=0, max_value=2**32-1)


def path_network(a=1, b=1):
    return make_network(range(3), {(0, 1): a, (1, 2): b}, {"a": 0, "b": 2})


def test_triangle_distances(triangle_star):
    metric = all_pairs_shortest_paths(triangle_star.network)
    for u in range(3):
        for v in range(3):
            assert metric.dist[(u, v)] == (0 if u == v else 1)


def test_path_distances():
    assert all_pairs_shortest_paths(path_network()).dist[(0, 2)] == 2
    assert all_pairs_shortest_paths(path_network(Fraction(1, 2), Fraction(1, 2))).dist[(0, 2)] == 1


def test_ties_go_to_the_smaller_neighbor():
    square = make_network(range(4), {(0, 1): 1, (0, 2): 1, (1, 3): 1, (2, 3): 1}, {"a": 0, "b": 3})
    metric = all_pairs_shortest_paths(square)
    assert metric.path(0, 3) == (0, 1, 3)
    assert metric.path(3, 0) == (3, 1, 0)
    assert metric.path(2, 2) == (2,)


def test_zero_cost_edges():
    network = make_network(range(3), {(0, 1): 0, (1, 2): 0, (0, 2): 0}, {"a": 0, "b": 2})
    metric = all_pairs_shortest_paths(network)
    assert metric.path(0, 2) == (0, 2)
    assert metric.dist[(2, 0)] == 0


def test_path_star(path_star):
    hubbing = optimal_t_hubbing(path_star)
    assert hubbing.cost == 10
    # all three placements cost 10, the smallest node id wins
    assert hubbing.placement[2] == 0
    assert hubbing.allocation == {(0, 1): 5, (1, 2): 5}


def test_triangle_star(triangle_star):
    assert optimal_t_hubbing(triangle_star).cost == 2


def test_star_is_a_weighted_median(star_network):
    inst = make_instance(star_network, star_tree([1, 1, 1]))
    hubbing = optimal_t_hubbing(inst)
    assert hubbing.placement[3] == 3
    assert hubbing.cost == 6
    assert brute_force_placement(inst) == 6


def test_hub_routing_examples(path_star, triangle_star):
    assert hub_routing(path_star.network, {"a": 1, "b": 1}).cost == 2
    hubbing = hub_routing(triangle_star.network, {"t1": 1, "t2": 1, "t3": 1})
    assert hubbing.cost == 2
    assert hubbing.placement[3] == 0
    assert hub_routing(triangle_star.network, {"t1": 3, "t2": 1, "t3": 1}) == \
        hub_routing(triangle_star.network, {"t1": 2, "t2": 1, "t3": 1})


@pytest.mark.parametrize("marginals", [
    {"t1": 1, "t2": 0, "t3": 0},
    {"t1": 1, "t2": 1},
    {"t1": 1, "t2": 1, "t3": -1},
])
def test_hub_routing_needs_marginals(triangle_star, marginals):
    with pytest.raises(ValidationError):
        hub_routing(triangle_star.network, marginals)


def test_routes(triangle_star):
    hubbing = optimal_t_hubbing(triangle_star)
    assert hubbing.placement[3] == 0
    assert extract_route(hubbing, "t2", "t3") == (1, 0, 2)
    # the cable of t1 is empty
    assert extract_route(hubbing, "t1", "t2") == (0, 1)
    with pytest.raises(ValidationError):
        extract_route(hubbing, "t1", "t9")
    with pytest.raises(ValidationError):
        extract_route(hubbing, "t1", "t1")


def test_route_with_coinciding_hubs():
    costs = {(0, 4): 1, (1, 4): 1, (2, 4): 1, (3, 4): 1}
    network = make_network(range(5), costs, {"1": 0, "2": 1, "3": 2, "4": 3})
    hubbing = optimal_t_hubbing(make_instance(network, caterpillar_tree(1)))
    assert hubbing.placement[4] == hubbing.placement[5] == 4
    assert hubbing.cables[(4, 5)] == (4,)
    assert extract_route(hubbing, "1", "3") == (0, 4, 2)
    assert hubbing.cost == 4


def test_brute_force_path_star(path_star):
    assert brute_force_placement(path_star) == 10


def test_brute_force_limit(triangle_star, monkeypatch):
    monkeypatch.setattr(config, "BRUTE_FORCE_LIMIT", 2)
    with pytest.raises(LimitError):
        brute_force_placement(triangle_star)


@given(seed=seeds, n_nodes=st.integers(min_value=2, max_value=8), n_leaves=st.integers(min_value=2, max_value=5),
       shape=st.sampled_from(config.shapes))
@settings(max_examples=200, deadline=None)
def test_dp_equals_brute_force(seed, n_nodes, n_leaves, shape):
    n_leaves = min(n_leaves, n_nodes)
    inst = gen_random_instance(seed, n_nodes, n_leaves, shape)
    assert len(inst.universe_tree.internal_nodes()) <= 3
    assert optimal_t_hubbing(inst).cost == brute_force_placement(inst)


@given(seed=seeds)
@settings(max_examples=50, deadline=None)
def test_allocation_is_tight(seed):
    inst = gen_random_instance(seed, 8, 4, "random-tree")
    hubbing = optimal_t_hubbing(inst)
    metric = all_pairs_shortest_paths(inst.network)
    assert hubbing.allocation == induced_loads(hubbing)
    assert hubbing.cost == allocation_cost(inst.network, hubbing.allocation)
    for (u, v), path in hubbing.cables.items():
        assert inst.network.path_cost(path) == metric.dist[(hubbing.placement[u], hubbing.placement[v])]


@given(seed=seeds, factor=st.fractions(min_value=Fraction(1, 10), max_value=10))
@settings(max_examples=50, deadline=None)
def test_scaling_capacities_scales_cost(seed, factor):
    inst = gen_random_instance(seed, 7, 4, "caterpillar")
    scaled = Instance(inst.network, inst.universe_tree.scaled(factor))
    hubbing = optimal_t_hubbing(inst)
    scaled_hubbing = optimal_t_hubbing(scaled)
    assert scaled_hubbing.cost == factor*hubbing.cost
    assert scaled_hubbing.placement == hubbing.placement


@given(seed=seeds, n_leaves=st.integers(min_value=2, max_value=6))
@settings(max_examples=100, deadline=None)
def test_hub_routing_is_the_star_optimum(seed, n_leaves):
    inst = gen_random_instance(seed, 8, n_leaves, "star")
    tree = inst.universe_tree
    center = tree.internal_nodes()[0]
    marginals = {name: tree.capacity(leaf, center) for leaf, name in tree.leaf_map.items()}
    assert hub_routing(inst.network, marginals).cost == optimal_t_hubbing(star_instance(inst.network, marginals)).cost


def test_tighten_allocation(path_star):
    hubbing = optimal_t_hubbing(path_star)
    inflated = Hubbing(
        hubbing.hub_tree, hubbing.placement, hubbing.cables, {(0, 1): Fraction(7), (1, 2): Fraction(5)}, Fraction(12)
    )
    assert tighten_allocation(inflated, path_star.network) == hubbing


ZERO_CAPACITY_CHOICES = ("0", "1", "2", "1/2")


@given(seed=seeds, n_nodes=st.integers(min_value=2, max_value=8), n_leaves=st.integers(min_value=2, max_value=5),
       shape=st.sampled_from(config.shapes))
@settings(max_examples=100, deadline=None)
def test_zero_capacities(seed, n_nodes, n_leaves, shape):
    with pytest.MonkeyPatch.context() as mp:
        mp.setattr(config, "CAPACITY_CHOICES", ZERO_CAPACITY_CHOICES)
        inst = gen_random_instance(seed, n_nodes, min(n_leaves, n_nodes), shape)
    hubbing = optimal_t_hubbing(inst)
    assert hubbing.cost == brute_force_placement(inst)
    metric = all_pairs_shortest_paths(inst.network)
    # zero capacity cables add nothing but still follow shortest paths
    assert hubbing.allocation == induced_loads(hubbing)
    for (u, v), path in hubbing.cables.items():
        assert inst.network.path_cost(path) == metric.dist[(hubbing.placement[u], hubbing.placement[v])]
