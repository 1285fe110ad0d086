"""
shortest paths and the optimal T-hubbing dynamic program
"""

# BUILT-INS
import heapq
import itertools
import dataclasses
from dataclasses import dataclass
from fractions import Fraction

# LIBS
import networkx as nx

# vpnhub
from vpnhub.scripts import config
from vpnhub.scripts.flows import defining_capacities
from vpnhub.scripts.instance import Hubbing, edge_key, path_edges, make_tree, make_instance
from vpnhub.scripts.logging import LimitError, ValidationError


@dataclass(frozen=True)
class Metric:
    """
    shortest path distances and predecessors. previous[(s, v)] is the
    node before v on the chosen shortest s-v path.
    """
    dist: dict
    previous: dict

    def path(self, u, v):
        """
        reconstruct the shortest u-v path
        """
        path = [v]
        while path[-1] != u:
            path.append(self.previous[(u, path[-1])])
        return tuple(reversed(path))


@dataclass(frozen=True)
class DPTable:
    """
    value[(w, v)]: cheapest embedding of the subtree below w with w at v.
    choice[(w, v)]: best placement of w when its parent sits at v.
    """
    value: dict
    choice: dict
    root: int
    optimum: Fraction


def dijkstra_algorithm(network, start_node):
    """
    implementation of the dijkstra algorithm. among several shortest
    paths the predecessor with the smallest id is kept.
    """
    shortest_path = {start_node: Fraction(0)}
    settled = []
    done = set()

    nodes_to_test = [(Fraction(0), start_node)]

    while nodes_to_test:
        current_distance, current_node = heapq.heappop(nodes_to_test)
        if current_node in done:
            continue
        done.add(current_node)
        settled.append(current_node)
        for neighbor in network.neighbors(current_node):
            distance = current_distance + network.cost(current_node, neighbor)
            # Only consider this new path if it's a better path
            if neighbor in shortest_path and not distance < shortest_path[neighbor]:
                continue
            shortest_path[neighbor] = distance
            heapq.heappush(nodes_to_test, (distance, neighbor))

    # predecessors have to be settled earlier, so zero cost edges can not
    # produce cycles
    rank = {node: i for i, node in enumerate(settled)}
    previous_nodes = {}
    for node in settled[1:]:
        previous_nodes[node] = min(
            neighbor for neighbor in network.neighbors(node)
            if rank[neighbor] < rank[node]
            and shortest_path[neighbor] + network.cost(neighbor, node) == shortest_path[node]
        )

    return previous_nodes, shortest_path


def all_pairs_shortest_paths(network):
    """
    exact shortest path metric of the network
    """
    dist = {}
    previous = {}
    for source in network.nodes:
        previous_nodes, shortest_path = dijkstra_algorithm(network, source)
        for node, distance in shortest_path.items():
            dist[(source, node)] = distance
        for node, before in previous_nodes.items():
            previous[(source, node)] = before

    return Metric(dist, previous)


def induced_loads(hubbing):
    """
    sum of cable capacities per network edge
    """
    loads = {}
    for key, path in hubbing.cables.items():
        capacity = hubbing.hub_tree.capacities[key]
        for e in path_edges(path):
            loads[e] = loads.get(e, Fraction(0)) + capacity
    return {e: load for e, load in sorted(loads.items()) if load != 0}


def allocation_cost(network, allocation):
    """
    cost of a capacity allocation
    """
    return sum((network.cost(*e)*value for e, value in allocation.items()), Fraction(0))


def assemble_hubbing(tree, placement, network, metric):
    """
    hubbing with shortest path cables and tight allocation
    """
    cables = {}
    for (u, v) in tree.edges:
        cables[(u, v)] = metric.path(placement[u], placement[v])
    hubbing = Hubbing(tree, dict(placement), cables, {}, Fraction(0))
    return tighten_allocation(hubbing, network)


def tighten_allocation(hubbing, network):
    """
    replace the allocation by the induced cable loads
    """
    allocation = induced_loads(hubbing)
    return dataclasses.replace(
        hubbing,
        allocation=allocation,
        cost=allocation_cost(network, allocation)
    )


def embedding_cost(tree, placement, metric):
    """
    sum of b(f) * dist over all tree edges
    """
    return sum(
        (b*metric.dist[(placement[u], placement[v])] for (u, v), b in tree.capacities.items()),
        Fraction(0)
    )


def fill_table(tree, network, metric):
    """
    dynamic program over the hub tree rooted at its smallest leaf.
    leaves are pinned to their terminals.
    """
    terminal = {leaf: network.terminals[name] for leaf, name in tree.leaf_map.items()}
    root = tree.leaves()[0]
    parents = nx.dfs_predecessors(tree.graph, root)
    value = {}
    best = {}
    choice = {}

    for w in nx.dfs_postorder_nodes(tree.graph, root):
        if w in tree.leaf_map:
            continue
        children = [x for x in tree.graph.neighbors(w) if x != parents[w]]
        for v in network.nodes:
            total = Fraction(0)
            for x in children:
                if x in tree.leaf_map:
                    total += tree.capacity(w, x)*metric.dist[(v, terminal[x])]
                else:
                    total += best[(x, v)]
            value[(w, v)] = total
        # the parent of a leaf-rooted subtree is a pinned leaf
        parent = parents[w]
        b = tree.capacity(parent, w)
        if parent in tree.leaf_map:
            parent_placements = [terminal[parent]]
        else:
            parent_placements = network.nodes
        for v_parent in parent_placements:
            best_v = None
            for v in network.nodes:
                candidate = value[(w, v)] + b*metric.dist[(v_parent, v)]
                if best_v is None or candidate < best[(w, v_parent)]:
                    best_v = v
                    best[(w, v_parent)] = candidate
            choice[(w, v_parent)] = best_v

    (child,) = tree.graph.neighbors(root)
    if child in tree.leaf_map:
        optimum = tree.capacity(root, child)*metric.dist[(terminal[root], terminal[child])]
    else:
        optimum = best[(child, terminal[root])]

    return DPTable(value, choice, root, optimum)


def placement_from_table(tree, network, table):
    """
    read the optimal placement top-down from the table
    """
    placement = {leaf: network.terminals[name] for leaf, name in tree.leaf_map.items()}
    for parent, w in nx.dfs_edges(tree.graph, table.root):
        if w not in tree.leaf_map:
            placement[w] = table.choice[(w, placement[parent])]
    return placement


def optimal_t_hubbing(inst, metric=None):
    """
    cheapest T-hubbing of the universe tree. capacities are
    replaced by defining capacities first.
    """
    tree = defining_capacities(inst.universe_tree)
    if metric is None:
        metric = all_pairs_shortest_paths(inst.network)
    table = fill_table(tree, inst.network, metric)
    placement = placement_from_table(tree, inst.network, table)

    return assemble_hubbing(tree, placement, inst.network, metric)


def star_instance(network, marginals):
    """
    hose model instance: star hub tree with the marginals as capacities
    """
    if set(marginals) != set(network.terminals):
        raise ValidationError("marginals cover exactly the terminals", f"got {sorted(marginals)}")
    if any(Fraction(b) < 0 for b in marginals.values()):
        raise ValidationError("marginals are nonnegative")
    if sum(1 for b in marginals.values() if b > 0) < 2:
        raise ValidationError("at least two positive marginals")
    names = sorted(network.terminals, key=lambda name: network.terminals[name])
    center = len(names)
    capacities = {(leaf, center): Fraction(marginals[name]) for leaf, name in enumerate(names)}
    leaf_map = dict(enumerate(names))
    star = make_tree(range(center+1), capacities, leaf_map)
    return make_instance(network, star)


def hub_routing(network, marginals, metric=None):
    """
    optimal hub routing for the hose model: all terminals
    connect to the weighted 1-median v*
    """
    star = defining_capacities(star_instance(network, marginals).universe_tree)
    if metric is None:
        metric = all_pairs_shortest_paths(network)
    center = star.internal_nodes()[0]
    weights = [(star.capacity(leaf, center), network.terminals[name]) for leaf, name in star.leaf_map.items()]
    hub = None
    for v in network.nodes:
        total = sum((b*metric.dist[(terminal, v)] for b, terminal in weights), Fraction(0))
        if hub is None or total < hub_total:
            hub = v
            hub_total = total
    placement = {leaf: network.terminals[name] for leaf, name in star.leaf_map.items()}
    placement[center] = hub

    return assemble_hubbing(star, placement, network, metric)


def extract_route(hubbing, i, j):
    """
    walk in the network between terminals i and j: the
    cables along the tree path concatenated
    """
    tree = hubbing.hub_tree
    for name in (i, j):
        if name not in tree.leaf_of:
            raise ValidationError("route endpoints are terminals", f"unknown terminal {name}")
    if i == j:
        raise ValidationError("route endpoints differ", f"{i}")
    tree_path = nx.shortest_path(tree.graph, tree.leaf_of[i], tree.leaf_of[j])
    walk = [hubbing.placement[tree_path[0]]]
    for u, v in zip(tree_path, tree_path[1:]):
        walk += hubbing.cable(u, v)[1:]
    return tuple(walk)


def brute_force_placement(inst, metric=None):
    """
    cheapest embedding cost over all placements of the internal
    hub tree nodes. only used as an oracle.
    """
    tree = defining_capacities(inst.universe_tree)
    network = inst.network
    internal = tree.internal_nodes()
    space = len(network.nodes)**len(internal)
    if space > config.BRUTE_FORCE_LIMIT:
        raise LimitError(f"{space} placements exceed the brute force limit of {config.BRUTE_FORCE_LIMIT}")
    if metric is None:
        metric = all_pairs_shortest_paths(network)
    placement = {leaf: network.terminals[name] for leaf, name in tree.leaf_map.items()}
    optimum = None
    for assignment in itertools.product(network.nodes, repeat=len(internal)):
        placement.update(zip(internal, assignment))
        cost = embedding_cost(tree, placement, metric)
        if optimum is None or cost < optimum:
            optimum = cost

    return optimum
