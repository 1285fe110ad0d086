"""
instance and solution model, validation and parsing
"""

# BUILT-INS
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

# LIBS
import networkx as nx

# vpnhub
from vpnhub.scripts import logging
from vpnhub.scripts.logging import ParseError, ValidationError


def edge_key(u, v):
    """
    canonical key of an undirected edge
    """
    return (u, v) if u <= v else (v, u)


def path_edges(path):
    """
    edges of a node path as canonical keys
    """
    return [edge_key(path[i], path[i+1]) for i in range(len(path)-1)]


def parse_rational(literal):
    """
    parse a decimal (1.25) or fraction (5/4) literal exactly
    """
    try:
        if not literal.isascii():
            raise ValueError(literal)
        return Fraction(literal)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"'{literal}' is not a decimal or fraction literal")


def format_rational(value):
    """
    exact text of a rational, e.g. 5, 1/3
    """
    return str(Fraction(value))


@dataclass(frozen=True)
class Network:
    """
    undirected network G with edge costs and named terminals
    """
    nodes: tuple
    costs: dict  # edge_key -> Fraction
    terminals: dict  # terminal name -> node

    @cached_property
    def graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        for (u, v) in sorted(self.costs):
            graph.add_edge(u, v, cost=self.costs[(u, v)])
        return nx.freeze(graph)

    @cached_property
    def labels(self):
        """
        node -> terminal name
        """
        return {node: name for name, node in self.terminals.items()}

    def cost(self, u, v):
        return self.costs[edge_key(u, v)]

    def neighbors(self, node):
        return sorted(self.graph.neighbors(node))

    def path_cost(self, path):
        return sum((self.costs[e] for e in path_edges(path)), Fraction(0))


@dataclass(frozen=True)
class CapTree:
    """
    hub tree T with capacities b. the leaves are labeled
    by terminal names.
    """
    nodes: tuple
    capacities: dict  # edge_key -> Fraction
    leaf_map: dict  # leaf node -> terminal name

    @cached_property
    def graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        for (u, v) in sorted(self.capacities):
            graph.add_edge(u, v, capacity=self.capacities[(u, v)])
        return nx.freeze(graph)

    @property
    def labels(self):
        return self.leaf_map

    @cached_property
    def leaf_of(self):
        """
        terminal name -> leaf node
        """
        return {name: leaf for leaf, name in self.leaf_map.items()}

    @property
    def terminal_names(self):
        return frozenset(self.leaf_map.values())

    @property
    def edges(self):
        return sorted(self.capacities)

    def leaves(self):
        return sorted(self.leaf_map)

    def internal_nodes(self):
        return [node for node in self.nodes if node not in self.leaf_map]

    def capacity(self, u, v):
        return self.capacities[edge_key(u, v)]

    def with_capacities(self, capacities):
        """
        same tree, new capacities
        """
        return CapTree(self.nodes, dict(capacities), dict(self.leaf_map))

    def scaled(self, factor):
        return self.with_capacities({e: b*factor for e, b in self.capacities.items()})


@dataclass(frozen=True)
class Instance:
    """
    RND_HH input: network and universe tree
    """
    network: Network
    universe_tree: CapTree


@dataclass(frozen=True)
class Hubbing:
    """
    T-embedding (placement and cables) of a hub tree plus capacity
    allocation. cables are keyed by edge_key and run from the
    placement of the smaller to the placement of the larger tree node.
    a cable with a single node is the empty path.
    """
    hub_tree: CapTree
    placement: dict  # tree node -> network node
    cables: dict  # tree edge_key -> tuple of network nodes
    allocation: dict  # network edge_key -> Fraction, zero entries omitted
    cost: Fraction = field(default=Fraction(0))

    def cable(self, u, v):
        """
        cable of tree edge uv oriented from u to v
        """
        path = self.cables[edge_key(u, v)]
        return path if u <= v else tuple(reversed(path))


def validate_network(nodes, costs, terminals):
    """
    checks the Network invariants
    """
    node_set = set(nodes)
    for (u, v), cost in costs.items():
        if u == v:
            raise ValidationError("no self-loops", f"edge {u} {v}")
        if u not in node_set or v not in node_set:
            raise ValidationError("edges join network nodes", f"edge {u} {v}")
        if cost < 0:
            raise ValidationError("edge costs are nonnegative", f"edge {u} {v} has cost {cost}")
    if len(terminals) < 2:
        raise ValidationError("at least two terminals", f"found {len(terminals)}")
    if len(set(terminals.values())) != len(terminals):
        raise ValidationError("terminal node-ids are distinct")
    for name, node in terminals.items():
        if node not in node_set:
            raise ValidationError("terminals are network nodes", f"terminal {name}")
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(costs)
    if not nx.is_connected(graph):
        raise ValidationError("network is connected")


def validate_tree(nodes, capacities, leaf_map):
    """
    checks the CapTree invariants
    """
    node_set = set(nodes)
    for (u, v), capacity in capacities.items():
        if u == v:
            raise ValidationError("no self-loops", f"tree edge {u} {v}")
        if u not in node_set or v not in node_set:
            raise ValidationError("tree edges join tree nodes", f"tree edge {u} {v}")
        if capacity < 0:
            raise ValidationError("capacities are nonnegative", f"tree edge {u} {v} has capacity {capacity}")
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(capacities)
    if not nodes or not nx.is_tree(graph):
        raise ValidationError("edge set forms a tree")
    degree_one = {node for node in nodes if graph.degree(node) == 1}
    if set(leaf_map) != degree_one:
        raise ValidationError("leafMap covers exactly degree-1 nodes")
    if len(set(leaf_map.values())) != len(leaf_map):
        raise ValidationError("leafMap is a bijection", "a terminal labels two leaves")


def make_network(nodes, costs, terminals):
    """
    validated Network
    """
    nodes = tuple(sorted(nodes))
    costs = {edge_key(u, v): Fraction(c) for (u, v), c in costs.items()}
    validate_network(nodes, costs, terminals)
    return Network(nodes, costs, dict(terminals))


def make_tree(nodes, capacities, leaf_map, log_file=None):
    """
    validated CapTree. zero capacities only raise a warning.
    """
    nodes = tuple(sorted(nodes))
    capacities = {edge_key(u, v): Fraction(c) for (u, v), c in capacities.items()}
    validate_tree(nodes, capacities, leaf_map)
    for (u, v), capacity in sorted(capacities.items()):
        if capacity == 0:
            logging.raise_error(
                f"hub tree edge {u} {v} has zero capacity and carries no demand",
                log_file
            )
    return CapTree(nodes, capacities, dict(leaf_map))


def relabel_tree(tree):
    """
    renumber tree nodes to 0..n-1 keeping their order. returns
    the new tree and the old -> new node map.
    """
    relabel = {node: i for i, node in enumerate(sorted(tree.nodes))}
    capacities = {edge_key(relabel[u], relabel[v]): b for (u, v), b in tree.capacities.items()}
    leaf_map = {relabel[leaf]: name for leaf, name in tree.leaf_map.items()}
    return CapTree(tuple(range(len(relabel))), capacities, leaf_map), relabel


def make_instance(network, universe_tree):
    """
    validated Instance
    """
    if universe_tree.terminal_names != frozenset(network.terminals):
        raise ValidationError(
            "leafMap terminal names equal network terminal names",
            f"tree: {sorted(universe_tree.terminal_names)}, network: {sorted(network.terminals)}"
        )
    return Instance(network, universe_tree)


class _Lines:
    """
    tokenized lines of a vpnhub text file. keeps
    track of positions for error messages.
    """

    def __init__(self, text):
        self.lines = []
        for number, line in enumerate(text.splitlines(), start=1):
            if isinstance(line, bytes):
                try:
                    line = line.decode("utf-8")
                except UnicodeDecodeError as e:
                    raise ParseError("line is not valid UTF-8", number, e.start+1)
            content = line.split("#", 1)[0]
            tokens = []
            column = 0
            for token in content.split():
                column = content.index(token, column)
                tokens.append((token, column+1))
                column += len(token)
            if tokens:
                self.lines.append((number, tokens))
        self.pos = 0

    def peek(self):
        if self.pos < len(self.lines):
            return self.lines[self.pos]
        return None

    def next(self):
        line = self.peek()
        self.pos += 1
        return line

    def last_line(self):
        return self.lines[-1][0] if self.lines else 1


def _error(message, number, tokens, index=0):
    column = tokens[index][1] if index < len(tokens) else tokens[-1][1] + len(tokens[-1][0])
    raise ParseError(message, number, column)


def _integer(number, tokens, index):
    if index >= len(tokens):
        _error("missing integer", number, tokens, index)
    token = tokens[index][0]
    if not (token.isascii() and token.isdigit()):
        _error(f"'{token}' is not a nonnegative integer", number, tokens, index)
    return int(token)


def _rational(number, tokens, index):
    if index >= len(tokens):
        _error("missing number", number, tokens, index)
    try:
        return parse_rational(tokens[index][0])
    except ValueError as e:
        _error(str(e), number, tokens, index)


def _expect_length(number, tokens, lengths):
    if len(tokens) not in lengths:
        index = min(len(tokens), max(lengths))
        _error(f"'{tokens[0][0]}' line has a wrong number of fields", number, tokens, index)


def _parse_block(lines, header, node_word, label_word, edge_word):
    """
    parse a '<header> <n>' block with its node and edge lines.
    returns node count, labels and weighted edges.
    """
    line = lines.next()
    if line is None:
        raise ParseError(f"missing '{header}' line", lines.last_line(), 1)
    number, tokens = line
    if tokens[0][0] != header:
        _error(f"expected '{header}', found '{tokens[0][0]}'", number, tokens)
    _expect_length(number, tokens, (2,))
    n_nodes = _integer(number, tokens, 1)

    seen = set()
    labels = {}
    weights = {}
    while lines.peek() is not None and lines.peek()[1][0][0] in (node_word, edge_word):
        number, tokens = lines.next()
        if tokens[0][0] == node_word:
            _expect_length(number, tokens, (2, 4))
            node = _integer(number, tokens, 1)
            if node >= n_nodes:
                _error(f"node id {node} out of range 0..{n_nodes-1}", number, tokens, 1)
            if node in seen:
                _error(f"node {node} declared twice", number, tokens, 1)
            seen.add(node)
            if len(tokens) == 4:
                if tokens[2][0] != label_word:
                    _error(f"expected '{label_word}'", number, tokens, 2)
                labels[node] = tokens[3][0]
        else:
            _expect_length(number, tokens, (4,))
            u = _integer(number, tokens, 1)
            v = _integer(number, tokens, 2)
            weight = _rational(number, tokens, 3)
            for index, node in ((1, u), (2, v)):
                if node >= n_nodes:
                    _error(f"node id {node} out of range 0..{n_nodes-1}", number, tokens, index)
            if edge_key(u, v) in weights:
                raise ValidationError("at most one edge per node pair", f"line {number}: {u} {v}")
            weights[edge_key(u, v)] = weight
    if len(seen) != n_nodes:
        missing = sorted(set(range(n_nodes)) - seen)
        raise ValidationError("every declared node is listed", f"'{header}' misses nodes {missing}")
    return n_nodes, labels, weights


def _parse_network(lines):
    n_nodes, labels, costs = _parse_block(lines, "network", "node", "terminal", "edge")
    terminals = {}
    for node, name in sorted(labels.items()):
        if name in terminals:
            raise ValidationError("terminal names are unique", f"terminal {name}")
        terminals[name] = node
    return make_network(range(n_nodes), costs, terminals)


def _parse_tree(lines, log_file=None):
    n_nodes, leaf_map, capacities = _parse_block(lines, "hubtree", "tnode", "leaf", "tedge")
    return make_tree(range(n_nodes), capacities, leaf_map, log_file)


def _trailing(lines):
    line = lines.peek()
    if line is not None:
        number, tokens = line
        _error(f"unexpected '{tokens[0][0]}' line", number, tokens)


def parse_instance(text, log_file=None):
    """
    parse and validate an instance file
    """
    lines = _Lines(text)
    network = _parse_network(lines)
    universe_tree = _parse_tree(lines, log_file)
    _trailing(lines)
    return make_instance(network, universe_tree)


def read_instance(path, log_file=None):
    """
    read an instance file
    """
    with open(path, "rb") as f:
        return parse_instance(f.read(), log_file)


def parse_solution(text):
    """
    parse a solution file into a Hubbing
    """
    lines = _Lines(text)
    hub_tree = _parse_tree(lines)
    placement = {}
    cables = {}
    allocation = {}
    cost = None
    while lines.peek() is not None:
        number, tokens = lines.next()
        word = tokens[0][0]
        if word == "place":
            _expect_length(number, tokens, (3,))
            node = _integer(number, tokens, 1)
            if node not in hub_tree.graph:
                _error(f"unknown tree node {node}", number, tokens, 1)
            placement[node] = _integer(number, tokens, 2)
        elif word == "cable":
            if len(tokens) < 5 or tokens[3][0] != ":":
                _error("expected 'cable <u> <v> : <node path>'", number, tokens, min(len(tokens)-1, 3))
            u = _integer(number, tokens, 1)
            v = _integer(number, tokens, 2)
            if not hub_tree.graph.has_edge(u, v):
                _error(f"{u} {v} is not a hub tree edge", number, tokens, 1)
            path = tuple(_integer(number, tokens, i) for i in range(4, len(tokens)))
            # cables are stored from the smaller tree node
            cables[edge_key(u, v)] = path if u <= v else tuple(reversed(path))
        elif word == "cap":
            _expect_length(number, tokens, (4,))
            u = _integer(number, tokens, 1)
            v = _integer(number, tokens, 2)
            value = _rational(number, tokens, 3)
            if value != 0:
                allocation[edge_key(u, v)] = value
        elif word == "cost":
            _expect_length(number, tokens, (2,))
            cost = _rational(number, tokens, 1)
        else:
            _error(f"unexpected '{word}' line", number, tokens)
    if cost is None:
        raise ParseError("missing 'cost' line", lines.last_line(), 1)
    missing = [node for node in hub_tree.nodes if node not in placement]
    if missing:
        raise ValidationError("every tree node is placed", f"missing {missing}")
    missing = [e for e in hub_tree.edges if e not in cables]
    if missing:
        raise ValidationError("every tree edge has a cable", f"missing {missing}")
    return Hubbing(hub_tree, placement, cables, allocation, cost)


def read_solution(path):
    """
    read a solution file
    """
    with open(path, "rb") as f:
        return parse_solution(f.read())
