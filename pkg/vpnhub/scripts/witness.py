"""
T-hubbings into tree networks with capacity q* and their
composition with hubbings of general networks
"""

# BUILT-INS
from dataclasses import dataclass
from fractions import Fraction

# LIBS
import networkx as nx

# vpnhub
from vpnhub.scripts.embedding import tighten_allocation, induced_loads, allocation_cost
from vpnhub.scripts.flows import (
    cable_capacity, cable_capacities, minimal_min_cut, leaf_bipartition, defining_capacities
)
from vpnhub.scripts.instance import CapTree, Hubbing, edge_key, make_network, relabel_tree, validate_tree
from vpnhub.scripts.logging import CompositionError, ValidationError, WitnessError


@dataclass(frozen=True)
class CutFamily:
    """
    per edge e of F: (W_e, minimal minimum cut S_e, cut value)
    """
    root: str
    per_edge: dict


@dataclass(frozen=True)
class Orientation:
    """
    orientation of F for one internal hub. arcs[e] = (tail, head)
    """
    hub: int
    arcs: dict

    def out_degrees(self):
        degrees = {}
        for tail, _ in self.arcs.values():
            degrees[tail] = degrees.get(tail, 0) + 1
        return degrees

    def sinks(self, nodes):
        degrees = self.out_degrees()
        return [node for node in nodes if degrees.get(node, 0) == 0]


def check_tree_network(F, universe=None):
    """
    F has to be a tree whose leaves are exactly its terminals
    """
    graph = F.graph
    leaves = {node for node in F.nodes if graph.degree(node) == 1}
    if not nx.is_tree(graph) or leaves != set(F.terminals.values()):
        raise ValidationError("network is a tree whose leaves are exactly the terminals")
    if universe is not None and universe.terminal_names != frozenset(F.terminals):
        raise ValidationError("leafMap terminal names equal network terminal names")


def default_root(F):
    """
    terminal with the smallest node id
    """
    return min(F.terminals, key=lambda name: F.terminals[name])


def q_star(F, universe):
    """
    minimal capacity every oblivious routing needs on each
    edge of the tree network F
    """
    check_tree_network(F, universe)
    root = default_root(F)
    q = {}
    for e in sorted(F.costs):
        behind, _ = leaf_bipartition(F, e, root)
        q[e] = cable_capacity(universe, behind)
    return q


def cut_family(F, universe, root=None):
    """
    minimal minimum cuts S_e for all edges of F. W_e is the side
    of e not containing the root.
    """
    check_tree_network(F, universe)
    if root is None:
        root = default_root(F)
    if root not in F.terminals:
        raise ValidationError("root is a terminal", f"{root}")
    per_edge = {}
    for e in sorted(F.costs):
        behind, _ = leaf_bipartition(F, e, root)
        cut = minimal_min_cut(universe, behind)
        per_edge[e] = (behind, cut.source_side, cut.value)
    return CutFamily(root, per_edge)


def orient(F, fam, w):
    """
    orient e away from the root if w is in S_e, else towards it
    """
    depth = nx.shortest_path_length(F.graph, F.terminals[fam.root])
    arcs = {}
    for e, (_, side, _) in fam.per_edge.items():
        u, v = e
        upper, lower = (u, v) if depth[u] < depth[v] else (v, u)
        if w in side:
            arcs[e] = (upper, lower)
        else:
            arcs[e] = (lower, upper)
    return Orientation(w, arcs)


def place_internal(F, fam, w):
    """
    hub position of w: the unique sink of its orientation
    """
    orientation = orient(F, fam, w)
    for node, degree in orientation.out_degrees().items():
        if degree > 1:
            raise WitnessError(f"node {node} has {degree} outgoing arcs in the orientation of hub {w}")
    sinks = orientation.sinks(F.nodes)
    if len(sinks) != 1:
        raise WitnessError(f"orientation of hub {w} has {len(sinks)} sinks")
    return sinks[0]


def theorem4_hubbing(F, universe, root=None):
    """
    T-hubbing of the universe into the tree network F whose
    allocation is exactly q*
    """
    check_tree_network(F, universe)
    tree = defining_capacities(universe)
    fam = cut_family(F, tree, root)
    placement = {leaf: F.terminals[name] for leaf, name in tree.leaf_map.items()}
    for w in tree.internal_nodes():
        placement[w] = place_internal(F, fam, w)
    cables = {}
    for (u, v) in tree.edges:
        cables[(u, v)] = tuple(nx.shortest_path(F.graph, placement[u], placement[v]))
    allocation = {e: value for e, (_, _, value) in fam.per_edge.items() if value != 0}
    hubbing = Hubbing(tree, placement, cables, allocation, allocation_cost(F, allocation))

    # the induced load has to meet q* exactly
    loads = induced_loads(hubbing)
    for e in fam.per_edge:
        if loads.get(e, Fraction(0)) != allocation.get(e, Fraction(0)):
            raise WitnessError(
                f"load {loads.get(e, 0)} on edge {e} differs from q* = {allocation.get(e, 0)}"
            )

    return hubbing


def loop_erase(walk):
    """
    simple path inside a walk: loops are cut out when a node is revisited
    """
    path = []
    index = {}
    for node in walk:
        if node in index:
            for removed in path[index[node]+1:]:
                del index[removed]
            path = path[:index[node]+1]
        else:
            index[node] = len(path)
            path.append(node)
    return tuple(path)


def compose(outer, inner):
    """
    compose a T-hubbing into F (inner) with an F-hubbing
    into G (outer). the allocation of the outer hubbing is kept.
    """
    F = outer.hub_tree
    if inner.hub_tree.terminal_names != F.terminal_names:
        raise CompositionError("inner and outer hub trees have different terminals")
    for v, node in inner.placement.items():
        if node not in F.graph:
            raise CompositionError(f"inner hub {v} is placed at {node}, which is not a node of the outer hub tree")
    for leaf, name in inner.hub_tree.leaf_map.items():
        if inner.placement[leaf] != F.leaf_of[name]:
            raise CompositionError(f"terminal {name} is not pinned to its leaf of the outer hub tree")

    placement = {v: outer.placement[node] for v, node in inner.placement.items()}
    cables = {}
    for key, f_path in inner.cables.items():
        walk = [outer.placement[f_path[0]]]
        for a, b in zip(f_path, f_path[1:]):
            if not F.graph.has_edge(a, b):
                raise CompositionError(f"inner cable {key} uses {a} {b}, which is not an outer hub tree edge")
            walk += outer.cable(a, b)[1:]
        cables[key] = loop_erase(walk)

    return Hubbing(inner.hub_tree, placement, cables, dict(outer.allocation), outer.cost)


def hub_tree_network(hubbing, network):
    """
    hub tree of a hubbing as a tree network. edges cost as much
    as their cables.
    """
    tree = hubbing.hub_tree
    costs = {key: network.path_cost(hubbing.cables[key]) for key in tree.edges}
    return make_network(tree.nodes, costs, dict(tree.leaf_of))


def reduce_to_t_hubbing(inst, outer):
    """
    T-hubbing of the instance universe that needs no more capacity
    than the given hierarchical hubbing on any edge
    """
    F = hub_tree_network(outer, inst.network)
    inner = theorem4_hubbing(F, inst.universe_tree)
    return tighten_allocation(compose(outer, inner), inst.network)


def tree_routing_hubbing(network, support, universe):
    """
    hierarchical hubbing of a tree routing: the support tree
    becomes the hub tree, terminals inside it get a pendant leaf
    """
    support = {edge_key(u, v) for u, v in support}
    for e in support:
        if e not in network.costs:
            raise ValidationError("support edges are network edges", f"{e}")
    graph = nx.Graph(sorted(support))
    terminal_nodes = set(network.terminals.values())
    if not terminal_nodes <= set(graph) or not nx.is_tree(graph):
        raise ValidationError("support is a tree containing every terminal")
    # drop branches without terminals
    leaves = [node for node in graph if graph.degree(node) == 1 and node not in terminal_nodes]
    while leaves:
        graph.remove_nodes_from(leaves)
        leaves = [node for node in graph if graph.degree(node) == 1 and node not in terminal_nodes]

    placement = {node: node for node in graph}
    cables = {edge_key(u, v): (min(u, v), max(u, v)) for u, v in graph.edges}
    leaf_map = {}
    next_node = max(network.nodes) + 1
    for name, node in sorted(network.terminals.items()):
        if graph.degree(node) == 1:
            leaf_map[node] = name
            continue
        # pendant leaf at the terminal, its cable is empty
        placement[next_node] = node
        cables[(node, next_node)] = (node,)
        leaf_map[next_node] = name
        next_node += 1
    nodes = tuple(sorted(placement))
    topology = {key: Fraction(0) for key in cables}
    validate_tree(nodes, topology, leaf_map)
    # hub tree ids follow the support nodes, renumbered densely
    tree, relabel = relabel_tree(CapTree(nodes, topology, leaf_map))
    placement = {relabel[node]: at for node, at in placement.items()}
    cables = {(relabel[u], relabel[v]): path for (u, v), path in cables.items()}
    tree = tree.with_capacities(cable_capacities(tree, universe))

    return tighten_allocation(Hubbing(tree, placement, cables, {}, Fraction(0)), network)
