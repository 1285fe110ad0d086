import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vpnhub.scripts.flows import (
    FlowProblem, cable_capacity, cut_capacity, defining_capacities, leaf_bipartition, max_flow, minimal_min_cut
)
from vpnhub.scripts.generate import gen_random_instance
from vpnhub.scripts.instance import make_tree
from vpnhub.scripts.logging import ValidationError

from conftest import star_tree, caterpillar_tree


def path_tree(a, b):
    """
    path 1 - x - 2, leaves 0 and 1, middle node 2
    """
    return make_tree(range(3), {(0, 2): a, (1, 2): b}, {0: "1", 1: "2"})


def random_universe(seed, n_leaves):
    return gen_random_instance(seed, n_leaves, n_leaves, "random-tree").universe_tree


def proper_subsets(names):
    names = sorted(names)
    for k in range(1, len(names)):
        for part in itertools.combinations(names, k):
            yield frozenset(part)


def all_cuts(problem):
    """
    every node set holding all sources and no sink with its capacity
    """
    free = sorted(set(problem.nodes) - problem.sources - problem.sinks)
    for k in range(len(free)+1):
        for extra in itertools.combinations(free, k):
            side = problem.sources | frozenset(extra)
            yield side, cut_capacity(problem.capacities, side)


def test_bottleneck():
    problem = FlowProblem((0, 1, 2), {(0, 1): Fraction(2), (1, 2): Fraction(1)}, frozenset({0}), frozenset({2}))
    value, reachable = max_flow(problem)
    assert value == 1
    assert reachable == {0, 1}


def test_star_flow():
    tree = star_tree([3, 1, 1])
    problem = FlowProblem(tree.nodes, tree.capacities, frozenset({0}), frozenset({1, 2}))
    value, reachable = max_flow(problem)
    assert value == 2
    assert reachable == {0, 3}


def test_disconnected_flow():
    problem = FlowProblem((0, 1), {}, frozenset({0}), frozenset({1}))
    assert max_flow(problem) == (0, frozenset({0}))


@pytest.mark.parametrize("sources, sinks, capacities", [
    (set(), {1}, {}),
    ({0}, {0}, {}),
    ({0}, {1}, {(0, 1): Fraction(-1)}),
])
def test_flow_problem_invariants(sources, sinks, capacities):
    with pytest.raises(ValidationError):
        FlowProblem((0, 1), capacities, frozenset(sources), frozenset(sinks))


def test_minimal_min_cut_examples():
    cut = minimal_min_cut(path_tree(2, 1), {"1"})
    assert (cut.value, cut.source_side) == (1, {0, 2})
    cut = minimal_min_cut(star_tree([1, 1, 1]), {"1"})
    assert (cut.value, cut.source_side) == (1, {0})
    cut = minimal_min_cut(star_tree([3, 1, 1]), {"1"})
    assert (cut.value, cut.source_side) == (2, {0, 3})


@pytest.mark.parametrize("part", [set(), {"1", "2", "3"}, {"9"}])
def test_minimal_min_cut_needs_proper_part(part):
    with pytest.raises(ValidationError):
        minimal_min_cut(star_tree([1, 1, 1]), part)


def test_defining_capacities_examples():
    assert defining_capacities(star_tree([3, 1, 1])) == star_tree([2, 1, 1])
    assert defining_capacities(star_tree([1, 1, 1])) == star_tree([1, 1, 1])
    assert defining_capacities(caterpillar_tree(5)).capacity(4, 5) == 2


def test_cable_capacity_examples():
    assert cable_capacity(star_tree([1, 1, 1]), {"1"}) == 1
    universe = caterpillar_tree(1)
    # D_12 = D_34 = 1 crosses {1,3}|{2,4} without touching the middle edge
    assert cable_capacity(universe, {"1", "3"}) == 2
    assert cable_capacity(universe, (frozenset({"1", "3"}), frozenset({"2", "4"}))) == 2
    assert cable_capacity(universe, {"1", "2"}) == 1
    assert cable_capacity(universe, {"3", "4"}) == 1


def test_cable_capacity_rejects_bad_bipartitions():
    with pytest.raises(ValidationError):
        cable_capacity(caterpillar_tree(1), (frozenset({"1"}), frozenset({"2"})))
    with pytest.raises(ValidationError):
        cable_capacity(caterpillar_tree(1), set())


def test_leaf_bipartition_examples():
    star = star_tree([1, 1, 1])
    assert leaf_bipartition(star, (1, 3), "1") == ({"2"}, {"1", "3"})
    assert leaf_bipartition(path_tree(1, 1), (0, 2), "1") == ({"2"}, {"1"})
    assert leaf_bipartition(caterpillar_tree(1), (4, 5), "1") == ({"3", "4"}, {"1", "2"})
    with pytest.raises(ValidationError):
        leaf_bipartition(star, (0, 1), "1")


@given(seed=st.integers(min_value=0, max_value=2**32-1))
@settings(max_examples=40, deadline=None)
def test_max_flow_equals_min_cut(seed):
    network = gen_random_instance(seed, 8, 3, "star").network
    terminals = sorted(network.terminals.values())
    problem = FlowProblem(network.nodes, network.costs, frozenset(terminals[:1]), frozenset(terminals[1:]))
    value, reachable = max_flow(problem)
    assert value == min(capacity for _, capacity in all_cuts(problem))
    assert cut_capacity(problem.capacities, reachable) == value


@given(seed=st.integers(min_value=0, max_value=2**32-1), n_leaves=st.integers(min_value=3, max_value=5))
@settings(max_examples=60, deadline=None)
def test_minimal_min_cut_is_least_and_smallest(seed, n_leaves):
    universe = random_universe(seed, n_leaves)
    for part in proper_subsets(universe.terminal_names):
        cut = minimal_min_cut(universe, part)
        sources = frozenset(universe.leaf_of[name] for name in part)
        sinks = frozenset(universe.leaf_map) - sources
        problem = FlowProblem(universe.nodes, universe.capacities, sources, sinks)
        minimum = [side for side, capacity in all_cuts(problem) if capacity == cut.value]
        assert cut.value == min(capacity for _, capacity in all_cuts(problem))
        assert cut.source_side in minimum
        # least element of the lattice of minimum cuts
        assert all(cut.source_side <= side for side in minimum)
        smallest = min(len(side) for side in minimum)
        assert [side for side in minimum if len(side) == smallest] == [cut.source_side]


@given(seed=st.integers(min_value=0, max_value=2**32-1), n_leaves=st.integers(min_value=2, max_value=5))
@settings(max_examples=60, deadline=None)
def test_defining_capacities_keep_the_universe(seed, n_leaves):
    universe = random_universe(seed, n_leaves)
    defining = defining_capacities(universe)
    assert defining_capacities(defining) == defining
    for e in universe.edges:
        assert defining.capacities[e] <= universe.capacities[e]
    for part in proper_subsets(universe.terminal_names):
        assert cable_capacity(defining, part) == cable_capacity(universe, part)


@given(seed=st.integers(min_value=0, max_value=2**32-1), n_leaves=st.integers(min_value=3, max_value=6))
@settings(max_examples=60, deadline=None)
def test_cuts_are_nested(seed, n_leaves):
    universe = random_universe(seed, n_leaves)
    root = sorted(universe.terminal_names)[0]
    cuts = {}
    for e in universe.edges:
        behind, _ = leaf_bipartition(universe, e, root)
        cuts[behind] = minimal_min_cut(universe, behind).source_side
    for small, large in itertools.permutations(cuts, 2):
        if small <= large:
            assert cuts[small] <= cuts[large]
