"""
max-flow / min-cut on capacitated trees and small graphs
"""

# BUILT-INS
import collections
from dataclasses import dataclass
from fractions import Fraction

# LIBS
import networkx as nx

# vpnhub
from vpnhub.scripts.instance import edge_key
from vpnhub.scripts.logging import ValidationError

# auxiliary terminals of the flow network
SUPER_SOURCE = "super-source"
SUPER_SINK = "super-sink"


@dataclass(frozen=True)
class FlowProblem:
    """
    undirected capacitated graph with source and sink sets
    """
    nodes: tuple
    capacities: dict  # edge_key -> Fraction
    sources: frozenset
    sinks: frozenset

    def __post_init__(self):
        if not self.sources or not self.sinks:
            raise ValidationError("sources and sinks nonempty")
        if self.sources & self.sinks:
            raise ValidationError("sources and sinks disjoint")
        if any(b < 0 for b in self.capacities.values()):
            raise ValidationError("capacities are nonnegative")


@dataclass(frozen=True)
class CutResult:
    """
    cut value and the source side of the cut
    """
    value: Fraction
    source_side: frozenset


class ResidualGraph(object):
    """
    residual graph of an undirected flow problem. each undirected
    edge uv of capacity b is a pair of arcs of capacity b.
    """

    def __init__(self, problem):
        self.residual = collections.defaultdict(dict)
        self.adjacent = collections.defaultdict(list)
        for (u, v), capacity in sorted(problem.capacities.items()):
            self.add_arc(u, v, capacity)
            self.add_arc(v, u, capacity)
        # unlimited capacity exceeds everything a cut can hold
        unlimited = sum(problem.capacities.values(), Fraction(0)) + 1
        for source in sorted(problem.sources):
            self.add_arc(SUPER_SOURCE, source, unlimited)
            self.add_arc(source, SUPER_SOURCE, Fraction(0))
        for sink in sorted(problem.sinks):
            self.add_arc(sink, SUPER_SINK, unlimited)
            self.add_arc(SUPER_SINK, sink, Fraction(0))

    def add_arc(self, u, v, capacity):
        if v not in self.residual[u]:
            self.adjacent[u].append(v)
            self.residual[u][v] = Fraction(0)
        self.residual[u][v] += capacity

    def bfs(self, start):
        """
        breadth first search over arcs with positive residual
        capacity. returns the parent map of reached nodes.
        """
        parent = {start: None}
        queue = collections.deque([start])
        while queue:
            u = queue.popleft()
            for v in self.adjacent[u]:
                if v not in parent and self.residual[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        return parent

    def augment(self):
        """
        augment along a shortest path. returns the amount of flow
        sent, zero if the sink is unreachable.
        """
        parent = self.bfs(SUPER_SOURCE)
        if SUPER_SINK not in parent:
            return Fraction(0)
        path_flow = None
        v = SUPER_SINK
        while v != SUPER_SOURCE:
            u = parent[v]
            if path_flow is None or self.residual[u][v] < path_flow:
                path_flow = self.residual[u][v]
            v = u
        v = SUPER_SINK
        while v != SUPER_SOURCE:
            u = parent[v]
            self.residual[u][v] -= path_flow
            self.residual[v][u] += path_flow
            v = u
        return path_flow


def max_flow(problem):
    """
    maximum flow from the sources to the sinks (edmonds-karp).
    returns the value and the original nodes reachable from the
    super source in the final residual graph.
    """
    graph = ResidualGraph(problem)
    value = Fraction(0)
    while True:
        path_flow = graph.augment()
        if path_flow == 0:
            break
        value += path_flow
    reachable = set(graph.bfs(SUPER_SOURCE)) - {SUPER_SOURCE}

    return value, frozenset(reachable)


def cut_capacity(capacities, side):
    """
    capacity of the edge boundary of a node set
    """
    return sum(
        (b for (u, v), b in capacities.items() if (u in side) != (v in side)),
        Fraction(0)
    )


def _leaf_sets(tree, part):
    """
    check a terminal set and return (its leaves, remaining leaves)
    """
    part = frozenset(part)
    unknown = part - tree.terminal_names
    if unknown:
        raise ValidationError("terminal set is a subset of W", f"unknown terminals {sorted(unknown)}")
    if not part or part == tree.terminal_names:
        raise ValidationError("terminal set is nonempty and proper", f"got {sorted(part)}")
    inside = frozenset(tree.leaf_of[name] for name in part)
    outside = frozenset(tree.leaf_map) - inside
    return inside, outside


def tree_flow_problem(tree, part):
    """
    flow problem from the leaves of a terminal set to the other leaves
    """
    inside, outside = _leaf_sets(tree, part)
    return FlowProblem(tree.nodes, dict(tree.capacities), inside, outside)


def minimal_min_cut(tree, part):
    """
    inclusion-minimal minimum cut in the tree separating the leaves
    of part from all other leaves
    """
    value, reachable = max_flow(tree_flow_problem(tree, part))
    return CutResult(value, reachable)


def cable_capacity(universe, part):
    """
    max demand of the universe across a terminal bipartition. part is
    one side (a terminal set) or a pair of complementary sides.
    """
    if isinstance(part, tuple) and len(part) == 2 and all(isinstance(x, (set, frozenset)) for x in part):
        side, other = part
        if side & other or side | other != universe.terminal_names:
            raise ValidationError("bipartition covers W", f"{sorted(side)} | {sorted(other)}")
        part = side
    value, _ = max_flow(tree_flow_problem(universe, part))
    return value


def leaf_bipartition(tree, e, root):
    """
    terminals behind tree edge e as seen from the root terminal,
    and the remaining terminals
    """
    u, v = e
    graph = tree.graph
    if not graph.has_edge(u, v):
        raise ValidationError("e is an edge of the tree", f"{u} {v}")
    names = tree.labels
    if root not in names.values():
        raise ValidationError("root is a leaf", f"{root}")
    pruned = nx.Graph(graph)
    pruned.remove_edge(u, v)
    component = nx.node_connected_component(pruned, u)
    root_node = next(node for node, name in names.items() if name == root)
    if root_node in component:
        component = nx.node_connected_component(pruned, v)
    behind = frozenset(names[node] for node in component if node in names)
    rest = frozenset(names.values()) - behind

    return behind, rest


def cable_capacities(tree, universe):
    """
    cable capacity of every edge of a hub tree: the largest
    load a demand of the universe puts on it
    """
    capacities = {}
    root = tree.leaf_map[tree.leaves()[0]]
    for e in tree.edges:
        behind, _ = leaf_bipartition(tree, e, root)
        capacities[edge_key(*e)] = cable_capacity(universe, behind)
    return capacities


def defining_capacities(tree):
    """
    replace every capacity by the largest load the universe can put
    on that edge, one max flow per edge
    """
    return tree.with_capacities(cable_capacities(tree, tree))
