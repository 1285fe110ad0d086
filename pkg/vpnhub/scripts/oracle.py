"""
brute force and LP based oracles: hub tree enumeration,
worst case edge loads and solution checking
"""

# BUILT-INS
import collections
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

# LIBS
import networkx as nx

# vpnhub
from vpnhub.scripts import config
from vpnhub.scripts.embedding import all_pairs_shortest_paths, optimal_t_hubbing, extract_route, allocation_cost
from vpnhub.scripts.flows import cable_capacities, defining_capacities, leaf_bipartition
from vpnhub.scripts.instance import CapTree, Instance, edge_key, path_edges, relabel_tree, validate_tree
from vpnhub.scripts.logging import LimitError, ValidationError
from vpnhub.scripts.simplex import LinearProgram, simplex_solve


@dataclass(frozen=True)
class HubTopology:
    """
    series-reduced leaf-labeled tree shape, capacities unset (zero)
    """
    tree: CapTree
    code: str


@dataclass(frozen=True)
class Check:
    """
    one line of a verification report
    """
    name: str
    subject: str
    passed: bool
    slack: Optional[Fraction] = None
    message: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]


def shape_code(tree):
    """
    canonical code of a leaf-labeled tree: its nontrivial splits,
    each written as the side without the first terminal
    """
    names = sorted(tree.terminal_names)
    root = names[0]
    splits = set()
    for e in tree.edges:
        behind, _ = leaf_bipartition(tree, e, root)
        if 2 <= len(behind) <= len(names) - 2:
            splits.add("+".join(sorted(behind)))
    if not splits:
        return "*"
    return "|".join(sorted(splits))


def enumerate_hub_trees(W):
    """
    all series-reduced trees with leaf set W. leaves are added one at
    a time, hanging from an internal node or subdividing an edge.
    """
    names = sorted(W)
    n = len(names)
    if not 2 <= n <= config.ENUMERATION_MAX_LEAVES:
        raise LimitError(f"hub trees are enumerated for 2 to {config.ENUMERATION_MAX_LEAVES} terminals, got {n}")
    trees = [[(0, 1)]]
    for leaf in range(2, n):
        grown = []
        for edges in trees:
            internal = sorted({node for e in edges for node in e if node >= n})
            for hub in internal:
                grown.append(edges + [(leaf, hub)])
            next_node = n + len(internal)
            for k, (u, v) in enumerate(edges):
                grown.append(edges[:k] + edges[k+1:] + [(u, next_node), (next_node, v), (leaf, next_node)])
        trees = grown

    topologies = []
    leaf_map = dict(enumerate(names))
    for edges in trees:
        nodes = tuple(sorted({node for e in edges for node in e}))
        tree = CapTree(nodes, {edge_key(u, v): Fraction(0) for u, v in edges}, dict(leaf_map))
        topologies.append(HubTopology(tree, shape_code(tree)))

    return sorted(topologies, key=lambda topology: topology.code)


def capacitate(topology, universe):
    """
    cable capacities of a candidate hub tree for the universe
    """
    return topology.tree.with_capacities(cable_capacities(topology.tree, universe))


def series_reduce(tree):
    """
    contract internal nodes of degree two. capacities are made
    defining first, so both edges of such a node agree.
    """
    tree = defining_capacities(tree)
    graph = nx.Graph(tree.graph)
    capacities = dict(tree.capacities)
    for node in tree.internal_nodes():
        if graph.degree(node) != 2:
            continue
        p, q = sorted(graph.neighbors(node))
        capacity = min(capacities.pop(edge_key(p, node)), capacities.pop(edge_key(node, q)))
        graph.remove_node(node)
        graph.add_edge(p, q)
        capacities[edge_key(p, q)] = capacity
    nodes = tuple(sorted(graph))
    validate_tree(nodes, capacities, tree.leaf_map)
    reduced, _ = relabel_tree(CapTree(nodes, capacities, dict(tree.leaf_map)))
    return reduced


def rank_hub_trees(inst, max_leaves=config.ORACLE_MAX_LEAVES):
    """
    optimal hubbing for every candidate hub tree, in shape code order
    """
    W = inst.universe_tree.terminal_names
    if len(W) > max_leaves:
        raise LimitError(f"the oracle runs up to {max_leaves} terminals, got {len(W)}")
    metric = all_pairs_shortest_paths(inst.network)
    ranked = []
    for topology in enumerate_hub_trees(W):
        candidate = Instance(inst.network, capacitate(topology, inst.universe_tree))
        ranked.append((topology, optimal_t_hubbing(candidate, metric)))
    return ranked


def best_hubbing_over_all_trees(inst, max_leaves=config.ORACLE_MAX_LEAVES):
    """
    cheapest hierarchical hubbing over all hub trees
    """
    best = None
    for topology, hubbing in rank_hub_trees(inst, max_leaves):
        if best is None or hubbing.cost < best[1].cost:
            best = (topology, hubbing)
    return best


def pair_key(i, j):
    if i == j:
        raise ValidationError("demand pairs join distinct terminals", f"{i}")
    return (i, j) if i < j else (j, i)


def worst_case_edge_load(universe, loads):
    """
    max of sum D_ij k_ij over the demands D routable in the universe tree
    """
    multiplicities = {}
    for pair, k in loads.items():
        i, j = tuple(pair)
        for name in (i, j):
            if name not in universe.terminal_names:
                raise ValidationError("demand pairs join terminals", f"unknown terminal {name}")
        if k < 0:
            raise ValidationError("multiplicities are nonnegative", f"{pair}: {k}")
        if k > 0:
            multiplicities[pair_key(i, j)] = Fraction(k)
    if not multiplicities:
        return Fraction(0)
    pairs = tuple(sorted(multiplicities))
    root = sorted(universe.terminal_names)[0]
    constraints = []
    for e in universe.edges:
        behind, _ = leaf_bipartition(universe, e, root)
        row = {pair: Fraction(1) for pair in pairs if (pair[0] in behind) != (pair[1] in behind)}
        if row:
            constraints.append((row, universe.capacities[e]))
    optimum, _ = simplex_solve(LinearProgram(pairs, multiplicities, tuple(constraints)))
    return optimum


def template_routes(hubbing):
    """
    edge multiplicities of every induced route
    """
    names = sorted(hubbing.hub_tree.terminal_names)
    return {
        (i, j): collections.Counter(path_edges(extract_route(hubbing, i, j)))
        for i, j in itertools.combinations(names, 2)
    }


def template_multiplicities(hubbing, e, routes=None):
    """
    how often network edge e occurs on each induced route
    """
    if routes is None:
        routes = template_routes(hubbing)
    e = edge_key(*e)
    return {pair: counts[e] for pair, counts in routes.items() if counts[e] > 0}


def template_edge_loads(inst, hubbing):
    """
    worst case load of the induced routing template on every used edge
    """
    routes = template_routes(hubbing)
    used = sorted({e for counts in routes.values() for e in counts})
    return {
        e: worst_case_edge_load(inst.universe_tree, template_multiplicities(hubbing, e, routes))
        for e in used
    }


def _check_cable(network, hubbing, u, v):
    """
    None if the cable of tree edge uv is a simple placement path,
    else the problem
    """
    path = hubbing.cables.get((u, v))
    if path is None:
        return "missing cable"
    if len(path) == 0:
        return "cable has no nodes"
    if path[0] != hubbing.placement.get(u) or path[-1] != hubbing.placement.get(v):
        return f"cable does not join the placements {hubbing.placement.get(u)} and {hubbing.placement.get(v)}"
    if len(set(path)) != len(path):
        return "cable is not simple"
    for a, b in path_edges(path):
        if (a, b) not in network.costs:
            return f"{a} {b} is not a network edge"
    return None


def verify_hubbing(inst, hubbing, template_bound=False):
    """
    check every hubbing invariant against the instance
    """
    network = inst.network
    tree = hubbing.hub_tree
    checks = []

    # structure of the hub tree
    names_ok = tree.terminal_names == frozenset(network.terminals)
    checks.append(Check(
        "terminals", "hub tree", names_ok,
        message="" if names_ok else "hub tree leaves are not the network terminals"
    ))
    try:
        validate_tree(tree.nodes, tree.capacities, tree.leaf_map)
        checks.append(Check("hub tree", "hub tree", True))
    except ValidationError as e:
        checks.append(Check("hub tree", "hub tree", False, message=str(e)))
        names_ok = False
    if not names_ok:
        return VerificationReport(tuple(checks))

    # placements and cables
    for node in tree.nodes:
        placed = hubbing.placement.get(node)
        ok = placed in network.graph
        checks.append(Check(
            "placement", str(node), ok,
            message="" if ok else f"placed at {placed}, which is not a network node"
        ))
    for leaf, name in sorted(tree.leaf_map.items()):
        ok = hubbing.placement.get(leaf) == network.terminals[name]
        checks.append(Check(
            "leaf pinning", name, ok,
            message="" if ok else f"leaf {leaf} is placed at {hubbing.placement.get(leaf)}, not at {network.terminals[name]}"
        ))
    valid_cables = []
    for (u, v) in tree.edges:
        problem = _check_cable(network, hubbing, u, v)
        checks.append(Check("cable", f"{u} {v}", problem is None, message=problem or ""))
        if problem is None:
            valid_cables.append((u, v))

    # capacities required by the universe
    required = cable_capacities(tree, inst.universe_tree)
    for e in tree.edges:
        slack = tree.capacities[e] - required[e]
        checks.append(Check("cable capacity", f"{e[0]} {e[1]}", slack >= 0, slack))

    # allocation covers the cables
    loads = {}
    for key in valid_cables:
        for e in path_edges(hubbing.cables[key]):
            loads[e] = loads.get(e, Fraction(0)) + required[key]
    allocation_ok = True
    for e in sorted(set(loads) | set(hubbing.allocation)):
        if e not in network.costs:
            checks.append(Check("allocation", f"{e[0]} {e[1]}", False, message="not a network edge"))
            allocation_ok = False
            continue
        slack = hubbing.allocation.get(e, Fraction(0)) - loads.get(e, Fraction(0))
        checks.append(Check("allocation", f"{e[0]} {e[1]}", slack >= 0, slack))

    # cost arithmetic
    if allocation_ok:
        slack = hubbing.cost - allocation_cost(network, hubbing.allocation)
        checks.append(Check(
            "cost", "total", slack == 0, slack,
            message="" if slack == 0 else "cost is not the cost of the allocation"
        ))

    # worst case load of the induced routing template
    if template_bound and len(valid_cables) == len(tree.edges):
        for e, load in template_edge_loads(inst, hubbing).items():
            slack = hubbing.allocation.get(e, Fraction(0)) - load
            checks.append(Check("template load", f"{e[0]} {e[1]}", slack >= 0, slack))

    return VerificationReport(tuple(checks))
