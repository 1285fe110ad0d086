from fractions import Fraction

import pytest

from vpnhub.scripts.instance import make_network, make_tree, make_instance, parse_instance


PATH_STAR = """\
# path a - v - b, star hub tree on a and b
network 3
node 0 terminal a
node 1
node 2 terminal b
edge 0 1 1
edge 1 2 1
hubtree 3
tnode 0 leaf a
tnode 1 leaf b
tnode 2
tedge 0 2 5
tedge 1 2 5
"""

TRIANGLE_STAR = """\
network 3
node 0 terminal t1
node 1 terminal t2
node 2 terminal t3
edge 0 1 1
edge 0 2 1
edge 1 2 1
hubtree 4
tnode 0 leaf t1
tnode 1 leaf t2
tnode 2 leaf t3
tnode 3
tedge 0 3 1
tedge 1 3 1
tedge 2 3 1
"""

NON_TREE = """\
network 4
node 0 terminal t1
node 1 terminal t2
node 2 terminal t3
node 3
edge 0 3 1
edge 1 3 1
edge 2 3 1
edge 0 1 1
hubtree 4
tnode 0 leaf t1
tnode 1 leaf t2
tnode 2 leaf t3
tnode 3
tedge 0 3 1
tedge 1 3 1
tedge 2 3 1
"""


def star_tree(capacities, names=("1", "2", "3")):
    """
    star with leaves 0..k-1 labeled by names and center k
    """
    k = len(names)
    return make_tree(
        range(k+1),
        {(leaf, k): Fraction(b) for leaf, b in enumerate(capacities)},
        dict(enumerate(names))
    )


def caterpillar_tree(middle, leaf_capacity=1, names=("1", "2", "3", "4")):
    """
    leaves 1, 2 at hub 4 and leaves 3, 4 at hub 5 (node ids 0..5)
    """
    capacities = {(0, 4): leaf_capacity, (1, 4): leaf_capacity, (2, 5): leaf_capacity, (3, 5): leaf_capacity, (4, 5): middle}
    return make_tree(range(6), capacities, dict(enumerate(names)))


@pytest.fixture
def path_star_text():
    return PATH_STAR


@pytest.fixture
def path_star():
    return parse_instance(PATH_STAR)


@pytest.fixture
def triangle_star():
    return parse_instance(TRIANGLE_STAR)


@pytest.fixture
def non_tree_text():
    return NON_TREE


@pytest.fixture
def star_network():
    """
    tree network: terminals 1, 2, 3 at nodes 0, 1, 2 around center 3
    """
    return make_network(range(4), {(0, 3): 1, (1, 3): 2, (2, 3): 3}, {"1": 0, "2": 1, "3": 2})


@pytest.fixture
def caterpillar_network():
    """
    tree network shaped like the caterpillar universe
    """
    costs = {(0, 4): 1, (1, 4): 1, (2, 5): 1, (3, 5): 1, (4, 5): 4}
    return make_network(range(6), costs, {"1": 0, "2": 1, "3": 2, "4": 3})


@pytest.fixture
def two_clusters():
    """
    network with two far apart terminal clusters {1, 2} and {3, 4}
    """
    costs = {
        (0, 4): 1, (1, 4): 1,
        (2, 5): 1, (3, 5): 1,
        (4, 6): 5, (6, 5): 5,
    }
    network = make_network(range(7), costs, {"1": 0, "2": 1, "3": 2, "4": 3})
    return make_instance(network, caterpillar_tree(Fraction(1, 2)))
