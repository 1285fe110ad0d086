"""
data writing and visualization.
"""
# BUILT-INS
import os

# LIBS
import pandas as pd
import matplotlib.pyplot as plt

# vpnhub
from vpnhub.scripts import config
from vpnhub.scripts.instance import Network, CapTree, Hubbing, format_rational
from vpnhub.scripts.embedding import induced_loads


def _network_lines(network):
    lines = [f"network {len(network.nodes)}"]
    for node in network.nodes:
        if node in network.labels:
            lines.append(f"node {node} terminal {network.labels[node]}")
        else:
            lines.append(f"node {node}")
    for (u, v), cost in sorted(network.costs.items()):
        lines.append(f"edge {u} {v} {format_rational(cost)}")
    return lines


def _tree_lines(tree):
    lines = [f"hubtree {len(tree.nodes)}"]
    for node in tree.nodes:
        if node in tree.leaf_map:
            lines.append(f"tnode {node} leaf {tree.leaf_map[node]}")
        else:
            lines.append(f"tnode {node}")
    for (u, v), capacity in sorted(tree.capacities.items()):
        lines.append(f"tedge {u} {v} {format_rational(capacity)}")
    return lines


def write_instance(inst):
    """
    canonical instance text
    """
    return "\n".join(_network_lines(inst.network) + _tree_lines(inst.universe_tree)) + "\n"


def write_solution(hubbing):
    """
    solution text: the hub tree followed by placements, cables,
    nonzero allocations and the cost. all numbers are exact.
    """
    lines = _tree_lines(hubbing.hub_tree)
    for node in hubbing.hub_tree.nodes:
        lines.append(f"place {node} {hubbing.placement[node]}")
    for (u, v) in hubbing.hub_tree.edges:
        path = " ".join(str(node) for node in hubbing.cables[(u, v)])
        lines.append(f"cable {u} {v} : {path}")
    for (u, v), value in sorted(hubbing.allocation.items()):
        if value != 0:
            lines.append(f"cap {u} {v} {format_rational(value)}")
    lines.append(f"cost {format_rational(hubbing.cost)}")
    return "\n".join(lines) + "\n"


def write_file(path, text):
    """
    write text to a file, '-' or None is stdout
    """
    if path is None or path == "-":
        print(text, end="")
        return
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w") as o:
        o.write(text)


def cost_summary(cost):
    """
    exact cost and a decimal approximation
    """
    return f"cost {format_rational(cost)} (~{float(cost):.{config.DECIMAL_PLACES}f})"


def _dot_network(network):
    lines = ["graph network {"]
    for node in network.nodes:
        if node in network.labels:
            lines.append(
                f'  n{node} [label="{node}\\n{network.labels[node]}", style=filled, fillcolor={config.DOT_TERMINAL_COLOR}];'
            )
        else:
            lines.append(f'  n{node} [label="{node}"];')
    for (u, v), cost in sorted(network.costs.items()):
        lines.append(f'  n{u} -- n{v} [label="c={format_rational(cost)}"];')
    lines.append("}")
    return lines


def _dot_tree(tree):
    lines = ["graph hubtree {"]
    for node in tree.nodes:
        if node in tree.leaf_map:
            label = f"{node}\\n{tree.leaf_map[node]}"
            color = config.DOT_TERMINAL_COLOR
        else:
            label = f"{node}"
            color = config.DOT_HUB_COLOR
        lines.append(f'  t{node} [label="{label}", style=filled, fillcolor={color}];')
    for (u, v), capacity in sorted(tree.capacities.items()):
        lines.append(f'  t{u} -- t{v} [label="b={format_rational(capacity)}"];')
    lines.append("}")
    return lines


def _dot_hubbing(hubbing, network=None):
    lines = ["graph hubbing {"]
    # hubs at their placements
    for node in hubbing.hub_tree.nodes:
        if node in hubbing.hub_tree.leaf_map:
            label = f"{hubbing.hub_tree.leaf_map[node]}@{hubbing.placement[node]}"
            color = config.DOT_TERMINAL_COLOR
        else:
            label = f"hub {node}@{hubbing.placement[node]}"
            color = config.DOT_HUB_COLOR
        lines.append(f'  t{node} [label="{label}", shape=box, style=filled, fillcolor={color}];')
    # cables
    for (u, v), path in sorted(hubbing.cables.items()):
        route = "-".join(str(node) for node in path)
        capacity = format_rational(hubbing.hub_tree.capacity(u, v))
        lines.append(f'  t{u} -- t{v} [label="b={capacity}\\n{route}", color={config.DOT_CABLE_COLOR}];')
    # allocation per network edge
    edges = sorted(network.costs) if network is not None else sorted(hubbing.allocation)
    nodes = sorted({node for e in edges for node in e} | set(hubbing.placement.values()))
    for node in nodes:
        lines.append(f'  n{node} [label="{node}"];')
    for (u, v) in edges:
        value = hubbing.allocation.get((u, v))
        if value:
            lines.append(f'  n{u} -- n{v} [label="u={format_rational(value)}", penwidth=2];')
        else:
            lines.append(f'  n{u} -- n{v} [style=dashed];')
    for node in hubbing.hub_tree.nodes:
        lines.append(f'  t{node} -- n{hubbing.placement[node]} [style=dotted];')
    lines.append("}")
    return lines


def export_dot(x, network=None):
    """
    DOT text of a network, a hub tree or a hubbing. a hubbing is
    drawn with all network edges when the network is given.
    """
    if isinstance(x, Network):
        lines = _dot_network(x)
    elif isinstance(x, CapTree):
        lines = _dot_tree(x)
    elif isinstance(x, Hubbing):
        lines = _dot_hubbing(x, network)
    else:
        raise TypeError(f"can not export {type(x).__name__} to DOT")
    return "\n".join(lines) + "\n"


def write_dot_files(dir, network, tree, hubbing=None):
    """
    network.dot, hubtree.dot and, for a solution, hubbing.dot
    """
    if not os.path.exists(dir):
        os.makedirs(dir)
    written = []
    files = [("network.dot", network), ("hubtree.dot", tree)]
    if hubbing is not None:
        files.append(("hubbing.dot", hubbing))
    for name, x in files:
        out = os.path.join(dir, name)
        write_file(out, export_dot(x, network))
        written.append(out)
    return written


def qstar_table(F, qstar):
    """
    q* per edge of a tree network
    """
    rows = []
    for (u, v), value in sorted(qstar.items()):
        rows.append({
            "u": u,
            "v": v,
            "cost": format_rational(F.cost(u, v)),
            "qstar": format_rational(value),
        })
    return pd.DataFrame(rows, columns=["u", "v", "cost", "qstar"])


def capacity_table(original, defining):
    """
    original and defining capacity per hub tree edge
    """
    rows = []
    for (u, v) in original.edges:
        before = original.capacity(u, v)
        after = defining.capacity(u, v)
        rows.append({
            "u": u,
            "v": v,
            "original": format_rational(before),
            "defining": format_rational(after),
            "reduced": after < before,
        })
    return pd.DataFrame(rows, columns=["u", "v", "original", "defining", "reduced"])


def oracle_table(ranked):
    """
    one row per candidate hub tree: shape code, cable capacities,
    optimal cost and the winner flag
    """
    best = None
    for index, (_, hubbing) in enumerate(ranked):
        if best is None or hubbing.cost < ranked[best][1].cost:
            best = index
    rows = []
    for index, (topology, hubbing) in enumerate(ranked):
        tree = hubbing.hub_tree
        capacities = ",".join(
            f"{u}-{v}:{format_rational(b)}" for (u, v), b in sorted(tree.capacities.items())
        )
        rows.append({
            "topology": topology.code,
            "capacities": capacities,
            "cost": format_rational(hubbing.cost),
            "winner": index == best,
        })
    return pd.DataFrame(rows, columns=["topology", "capacities", "cost", "winner"])


def verification_table(report):
    """
    one row per check of a verification report
    """
    rows = []
    for check in report.checks:
        rows.append({
            "check": check.name,
            "subject": check.subject,
            "result": "pass" if check.passed else "FAIL",
            "slack": "" if check.slack is None else format_rational(check.slack),
            "message": check.message,
        })
    return pd.DataFrame(rows, columns=["check", "subject", "result", "slack", "message"])


def table_text(df):
    """
    tab separated table text
    """
    return df.to_csv(sep="\t", index=False)


def allocation_plot(hubbing, path, qstar=None):
    """
    bar chart of the capacity allocated per network edge,
    next to q* for witnesses
    """
    edges = sorted(set(hubbing.allocation) | set(induced_loads(hubbing)) | set(qstar or {}))
    df = pd.DataFrame({
        "edge": [f"{u}-{v}" for u, v in edges],
        "allocation": [float(hubbing.allocation.get(e, 0)) for e in edges],
    })
    if qstar is not None:
        df["qstar"] = [float(qstar.get(e, 0)) for e in edges]

    fig, ax = plt.subplots(figsize=list(config.PLOT_SIZE))
    width = 0.4 if qstar is not None else 0.8
    positions = range(len(df))
    ax.bar([x - width/2 if qstar is not None else x for x in positions], df["allocation"], width=width, color="dimgrey", label="allocation")
    if qstar is not None:
        ax.bar([x + width/2 for x in positions], df["qstar"], width=width, color=config.DOT_TERMINAL_COLOR, label="q*")
    ax.set_xticks(list(positions))
    ax.set_xticklabels(df["edge"], rotation=90)
    ax.set_xlabel("network edge")
    ax.set_ylabel("capacity")
    ax.set_title(f"capacity allocation ({cost_summary(hubbing.cost)})")
    ax.spines['top'].set_visible(False)
    ax.spines['right'].set_visible(False)
    ax.legend()
    fig.savefig(path, bbox_inches='tight')
    plt.close(fig)
