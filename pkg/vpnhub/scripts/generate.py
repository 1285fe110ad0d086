"""
random instance generation
"""

# BUILT-INS
from fractions import Fraction

# LIBS
import numpy as np

# vpnhub
from vpnhub.scripts import config
from vpnhub.scripts.instance import edge_key, make_network, make_tree, make_instance
from vpnhub.scripts.logging import ValidationError


def terminal_names(n):
    """
    names t1..tn for generated terminals
    """
    return [f"t{i}" for i in range(1, n+1)]


def draw(rng, pool):
    """
    draw an exact rational from a pool of literals
    """
    return Fraction(pool[int(rng.integers(len(pool)))])


def random_connected_edges(rng, n):
    """
    random spanning tree on 0..n-1 plus some extra edges
    """
    edges = set()
    for node in range(1, n):
        edges.add(edge_key(node, int(rng.integers(node))))
    for _ in range(int(n*config.EXTRA_EDGE_FRACTION)):
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u != v:
            edges.add(edge_key(u, v))
    return sorted(edges)


def star_edges(n_leaves):
    """
    star with leaves 0..n-1 and center n
    """
    return [(leaf, n_leaves) for leaf in range(n_leaves)]


def caterpillar_edges(n_leaves):
    """
    caterpillar with leaves 0..n-1 and a spine of max(n-2, 1)
    internal nodes. both spine ends carry two leaves.
    """
    n_spine = max(n_leaves - 2, 1)
    spine = list(range(n_leaves, n_leaves + n_spine))
    edges = [(spine[i], spine[i+1]) for i in range(n_spine-1)]
    # first and last spine node get an extra leaf
    hosts = [spine[0]] + spine + [spine[-1]]
    if n_spine == 1:
        hosts = [spine[0]]*n_leaves
    for leaf, host in zip(range(n_leaves), hosts):
        edges.append((leaf, host))
    return edges


def random_tree_edges(rng, n_leaves):
    """
    random series-reduced tree. leaves are inserted one by one,
    either attached to an internal node or subdividing an edge.
    """
    if n_leaves == 2:
        return [(0, 1)]
    # leaves stay 0..n-1, internal nodes are numbered from n on
    edges = [(leaf, n_leaves) for leaf in range(3)]
    internal = [n_leaves]
    next_node = n_leaves + 1
    for leaf in range(3, n_leaves):
        choice = int(rng.integers(len(internal) + len(edges)))
        if choice < len(internal):
            edges.append((leaf, internal[choice]))
        else:
            u, v = edges.pop(choice - len(internal))
            middle = next_node
            next_node += 1
            internal.append(middle)
            edges += [(u, middle), (middle, v), (leaf, middle)]
    return edges


def gen_random_instance(seed, nV, nW, shape, log_file=None):
    """
    deterministic random instance. terminals are random network
    nodes, the universe tree has the requested shape.
    """
    if nW < 2 or nW > nV:
        raise ValidationError("2 <= nW <= nV", f"nV={nV}, nW={nW}")
    if shape not in config.shapes:
        raise ValidationError("shape is star, caterpillar or random-tree", f"got {shape}")
    rng = np.random.default_rng(seed)
    # network
    costs = {e: draw(rng, config.COST_CHOICES) for e in random_connected_edges(rng, nV)}
    chosen = sorted(int(x) for x in rng.choice(nV, size=nW, replace=False))
    names = terminal_names(nW)
    terminals = dict(zip(names, chosen))
    network = make_network(range(nV), costs, terminals)
    # universe tree
    if shape == "star":
        tree_edges = star_edges(nW)
    elif shape == "caterpillar":
        tree_edges = caterpillar_edges(nW)
    else:
        tree_edges = random_tree_edges(rng, nW)
    capacities = {edge_key(u, v): draw(rng, config.CAPACITY_CHOICES) for u, v in tree_edges}
    tree_nodes = sorted({node for e in tree_edges for node in e})
    leaf_map = dict(zip(range(nW), names))
    universe_tree = make_tree(tree_nodes, capacities, leaf_map, log_file)

    return make_instance(network, universe_tree)


def gen_random_tree_network(seed, terminals, n_internal):
    """
    random tree network whose leaves are exactly the terminals.
    internal nodes that end up as leaves are pruned.
    """
    if len(terminals) < 2:
        raise ValidationError("at least two terminals", f"found {len(terminals)}")
    rng = np.random.default_rng(seed)
    n_internal = max(n_internal, 1)
    internal = list(range(n_internal))
    edges = set()
    for node in internal[1:]:
        edges.add(edge_key(node, int(rng.integers(node))))
    terminal_nodes = {}
    for offset, name in enumerate(sorted(terminals)):
        node = n_internal + offset
        terminal_nodes[name] = node
        edges.add(edge_key(node, int(rng.integers(n_internal))))
    # prune internal leaves until only terminals are leaves
    pruned = True
    while pruned:
        pruned = False
        for node in internal:
            incident = [e for e in edges if node in e]
            if len(incident) <= 1:
                edges.difference_update(incident)
                internal.remove(node)
                pruned = True
                break
    # relabel to dense ids
    used = sorted({node for e in edges for node in e})
    relabel = {node: i for i, node in enumerate(used)}
    costs = {edge_key(relabel[u], relabel[v]): draw(rng, config.COST_CHOICES) for u, v in sorted(edges)}
    named = {name: relabel[node] for name, node in terminal_nodes.items()}
    return make_network(range(len(used)), costs, named)
