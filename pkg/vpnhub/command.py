"""
main workflow
"""

# BUILT-INS
import sys
import time
import argparse
from dataclasses import dataclass, field
from typing import Optional

# vpnhub
from vpnhub.scripts import config
from vpnhub.scripts import logging
from vpnhub.scripts import reporting
from vpnhub.scripts.embedding import optimal_t_hubbing
from vpnhub.scripts.flows import defining_capacities
from vpnhub.scripts.generate import gen_random_instance, gen_random_tree_network, terminal_names
from vpnhub.scripts.instance import make_instance, read_instance, read_solution
from vpnhub.scripts.logging import UsageError, VpnhubError
from vpnhub.scripts.oracle import rank_hub_trees, verify_hubbing
from vpnhub.scripts.witness import compose, q_star, theorem4_hubbing
from vpnhub import __version__
from . import _program


class VpnhubParser(argparse.ArgumentParser):
    """
    usage errors exit with the vpnhub usage code
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        logging.raise_error(message, exit=True, code=config.EXIT_USAGE)


@dataclass
class CommandConfig:
    """
    one cli invocation: the command, its input files, the output
    path, the seed and all remaining flags
    """
    command: str
    inputs: list
    out: Optional[str] = None
    seed: Optional[int] = None
    flags: dict = field(default_factory=dict)

    def flag(self, name):
        return self.flags.get(name)


def get_args(sysargs):
    """
    arg parsing for vpnhub
    """
    parser = VpnhubParser(
        prog=_program,
        description='vpnhub: optimal hierarchical hubbing for tree demand universes',
        usage='''vpnhub <command> <input files> [options]''')

    parser.add_argument(
        "command",
        choices=config.commands,
        help="solve, witness, compose, verify, oracle, gen, dot"
    )
    parser.add_argument(
        "inputs",
        nargs="*",
        help="instance and solution files of the command"
    )
    parser.add_argument(
        "-o",
        "--out",
        metavar="",
        type=str,
        default=None,
        help="output file (dot: output dir), default stdout"
    )
    parser.add_argument(
        "-r",
        "--root",
        metavar="",
        type=str,
        default=None,
        help="witness: root terminal of the tree network"
    )
    parser.add_argument(
        "-s",
        "--seed",
        metavar="",
        type=int,
        default=None,
        help="gen: random seed"
    )
    parser.add_argument(
        "--shape",
        metavar="",
        type=str,
        default="star",
        help="gen: shape of the universe tree (star, caterpillar, random-tree)"
    )
    parser.add_argument(
        "-n",
        "--nodes",
        metavar="",
        type=int,
        default=config.GEN_NODES,
        help="gen: number of network nodes"
    )
    parser.add_argument(
        "-t",
        "--terminals",
        metavar="",
        type=int,
        default=config.GEN_TERMINALS,
        help="gen: number of terminals"
    )
    parser.add_argument(
        "--tree",
        action="store_true",
        help="gen: the network is a tree whose leaves are the terminals"
    )
    parser.add_argument(
        "-m",
        "--max-leaves",
        metavar="",
        type=int,
        default=config.ORACLE_MAX_LEAVES,
        help="oracle: max number of terminals"
    )
    parser.add_argument(
        "--plot",
        metavar="",
        type=str,
        default=None,
        help="solve, witness: write the allocation plot to this pdf"
    )
    parser.add_argument(
        "--lp",
        action="store_true",
        help="verify: also check the worst case load of the routing template"
    )
    parser.add_argument(
        "--log",
        metavar="",
        type=str,
        default=None,
        help="write a log file"
    )
    parser.add_argument(
        "--verb",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="show vpnhub console output"
    )
    parser.add_argument(
        "-v",
        "--version",
        action='version',
        version=f"vpnhub {__version__}"
    )

    if len(sysargs) < 1:
        parser.print_help(sys.stderr)
        sys.exit(config.EXIT_USAGE)
    else:
        return parser.parse_args(sysargs)


def config_from_args(args):
    """
    CommandConfig of parsed arguments
    """
    return CommandConfig(
        command=args.command,
        inputs=list(args.inputs),
        out=args.out,
        seed=args.seed,
        flags={
            "root": args.root,
            "shape": args.shape,
            "nodes": args.nodes,
            "terminals": args.terminals,
            "tree": args.tree,
            "max_leaves": args.max_leaves,
            "plot": args.plot,
            "lp": args.lp,
            "log": args.log,
        }
    )


def report_cost(cmd, cost):
    """
    cost summary to stdout, or to the console if stdout
    carries the solution
    """
    if cmd.out is None:
        logging.console(reporting.cost_summary(cost))
    else:
        print(reporting.cost_summary(cost))


def run_solve(cmd, log_file):
    inst = read_instance(cmd.inputs[0], log_file)
    logging.vpnhub_progress(
        log_file,
        progress=0.2,
        job="Reading instance.",
        progress_text=f"{len(inst.network.nodes)} nodes, {len(inst.network.terminals)} terminals"
    )
    # defining capacities are logged next to the originals
    original = inst.universe_tree
    defining = defining_capacities(original)
    capacities = reporting.capacity_table(original, defining)
    logging.console(reporting.table_text(capacities))
    logging.write_log(log_file, reporting.table_text(capacities))
    logging.vpnhub_progress(
        log_file,
        progress=0.4,
        job="Computing defining capacities.",
        progress_text=f"{int(capacities['reduced'].sum())} of {len(capacities)} hub tree edges reduced"
    )
    hubbing = optimal_t_hubbing(inst)
    logging.vpnhub_progress(
        log_file,
        progress=0.8,
        job="Embedding the hub tree.",
        progress_text=reporting.cost_summary(hubbing.cost)
    )
    reporting.write_file(cmd.out, reporting.write_solution(hubbing))
    if cmd.flag("plot"):
        reporting.allocation_plot(hubbing, cmd.flag("plot"))
    report_cost(cmd, hubbing.cost)
    return config.EXIT_OK


def run_witness(cmd, log_file):
    inst = read_instance(cmd.inputs[0], log_file)
    F = inst.network
    qstar = q_star(F, inst.universe_tree)
    logging.vpnhub_progress(
        log_file,
        progress=0.4,
        job="Computing q* on the tree network.",
        progress_text=f"{len(qstar)} edges"
    )
    hubbing = theorem4_hubbing(F, inst.universe_tree, cmd.flag("root"))
    logging.vpnhub_progress(
        log_file,
        progress=0.8,
        job="Placing hubs at the sinks of their orientations.",
        progress_text=reporting.cost_summary(hubbing.cost)
    )
    reporting.write_file(cmd.out, reporting.write_solution(hubbing))
    table = reporting.table_text(reporting.qstar_table(F, qstar))
    if cmd.out is None:
        logging.console(table)
    else:
        reporting.write_file(f"{cmd.out}.qstar.tsv", table)
    if cmd.flag("plot"):
        reporting.allocation_plot(hubbing, cmd.flag("plot"), qstar)
    report_cost(cmd, hubbing.cost)
    return config.EXIT_OK


def run_compose(cmd, log_file):
    outer = read_solution(cmd.inputs[0])
    inner = read_solution(cmd.inputs[1])
    composed = compose(outer, inner)
    logging.vpnhub_progress(
        log_file,
        progress=0.8,
        job="Composing hubbings.",
        progress_text=f"{len(composed.hub_tree.nodes)} hub tree nodes"
    )
    reporting.write_file(cmd.out, reporting.write_solution(composed))
    report_cost(cmd, composed.cost)
    return config.EXIT_OK


def run_verify(cmd, log_file):
    inst = read_instance(cmd.inputs[0], log_file)
    hubbing = read_solution(cmd.inputs[1])
    report = verify_hubbing(inst, hubbing, template_bound=cmd.flag("lp"))
    failures = report.failures()
    logging.vpnhub_progress(
        log_file,
        progress=0.8,
        job="Verifying the solution.",
        progress_text=f"{len(report.checks) - len(failures)} of {len(report.checks)} checks passed"
    )
    reporting.write_file(cmd.out, reporting.table_text(reporting.verification_table(report)))
    if failures:
        logging.raise_error(
            f"{len(failures)} checks failed, first: {failures[0].name} {failures[0].subject}",
            log_file
        )
        return config.EXIT_VERIFICATION
    return config.EXIT_OK


def run_oracle(cmd, log_file):
    inst = read_instance(cmd.inputs[0], log_file)
    ranked = rank_hub_trees(inst, cmd.flag("max_leaves"))
    table = reporting.oracle_table(ranked)
    winner = table[table["winner"]].iloc[0]
    logging.vpnhub_progress(
        log_file,
        progress=0.8,
        job="Solving every hub tree.",
        progress_text=f"{len(table)} hub trees, best {winner['topology']} with cost {winner['cost']}"
    )
    reporting.write_file(cmd.out, reporting.table_text(table))
    return config.EXIT_OK


def run_gen(cmd, log_file):
    n_nodes = cmd.flag("nodes")
    n_terminals = cmd.flag("terminals")
    inst = gen_random_instance(cmd.seed, n_nodes, n_terminals, cmd.flag("shape"), log_file)
    if cmd.flag("tree"):
        network = gen_random_tree_network(cmd.seed, terminal_names(n_terminals), n_nodes - n_terminals)
        inst = make_instance(network, inst.universe_tree)
    logging.vpnhub_progress(
        log_file,
        progress=0.8,
        job="Generating a random instance.",
        progress_text=f"{len(inst.network.nodes)} nodes, {len(inst.network.costs)} edges"
    )
    reporting.write_file(cmd.out, reporting.write_instance(inst))
    return config.EXIT_OK


def run_dot(cmd, log_file):
    inst = read_instance(cmd.inputs[0], log_file)
    hubbing = read_solution(cmd.inputs[1]) if len(cmd.inputs) > 1 else None
    written = reporting.write_dot_files(cmd.out or ".", inst.network, inst.universe_tree, hubbing)
    logging.vpnhub_progress(
        log_file,
        progress=0.8,
        job="Writing DOT files.",
        progress_text=", ".join(written)
    )
    return config.EXIT_OK


COMMANDS = {
    "solve": run_solve,
    "witness": run_witness,
    "compose": run_compose,
    "verify": run_verify,
    "oracle": run_oracle,
    "gen": run_gen,
    "dot": run_dot,
}


def run(cmd):
    """
    run one command. library errors end vpnhub with their exit code.
    """
    log_file = cmd.flag("log")
    start_time = time.process_time()
    logging.confirm_config(log_file)
    try:
        code = COMMANDS[cmd.command](cmd, log_file)
    except VpnhubError as e:
        logging.raise_error(str(e), log_file, exit=True, code=e.exit_code)
    except OSError as e:
        logging.raise_error(str(e), log_file, exit=True, code=config.EXIT_USAGE)
    logging.vpnhub_progress(log_file, progress=1, start_time=start_time)
    return code


def main(sysargs=sys.argv[1:]):
    """
    main vpnhub workflow
    """
    args = get_args(sysargs)
    logging.VERBOSE = args.verb
    # the log file is started before the argument warnings go into it
    logging.vpnhub_progress(args.log, job=args.command)
    try:
        logging.raise_arg_errors(args, args.log)
    except UsageError as e:
        logging.raise_error(str(e), args.log, exit=True, code=e.exit_code)
    sys.exit(run(config_from_args(args)))
