"""
vpnhub logging and raising errors
"""

# BUILT-INS
import sys
import time
import datetime

# vpnhub
from vpnhub.scripts import config

# console output can be silenced with --no-verb
VERBOSE = True


class VpnhubError(Exception):
    """
    base class of all vpnhub errors
    """
    exit_code = config.EXIT_VALIDATION


class UsageError(VpnhubError):
    """
    wrong command line usage
    """
    exit_code = config.EXIT_USAGE


class ParseError(VpnhubError):
    """
    syntax error in an instance or solution file
    """

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class ValidationError(VpnhubError):
    """
    an object violates one of its invariants. the
    invariant is named in the message.
    """

    def __init__(self, invariant, message=""):
        self.invariant = invariant
        text = f"invariant '{invariant}' violated"
        if message:
            text = f"{text}: {message}"
        super().__init__(text)


class LimitError(VpnhubError):
    """
    a search space or size limit is exceeded
    """


class CompositionError(VpnhubError):
    """
    hub tree of the outer hubbing and host network
    of the inner hubbing do not fit together
    """


class WitnessError(VpnhubError):
    """
    the tree witness construction produced an inconsistent
    result. never expected on valid input.
    """
    exit_code = config.EXIT_VERIFICATION


class UnboundedError(VpnhubError):
    """
    the linear program has no finite optimum
    """


def console(*text):
    """
    print to stderr if vpnhub is verbose
    """
    if VERBOSE:
        print(*text, file=sys.stderr, flush=True)


def write_log(log_file, *text):
    """
    append lines to the log file if there is one
    """
    if log_file is None:
        return
    with open(log_file, 'a') as f:
        print(*text, sep="\n", file=f)


def vpnhub_progress(log_file, start_time=None, progress=0, job="", progress_text=""):
    """
    progress bar and main progress logging
    """
    barLength = 40
    block = int(round(barLength*progress))

    if progress == 0:
        console(f"\nStarting \033[31m\033[1mvpnhub\033[0m {job}\n")
        if log_file is not None:
            with open(log_file, 'w') as f:
                f.write('VPNHUB log \n\n')
    else:
        if progress == 1:
            stop_time = str(round(time.process_time() - start_time, 2))
            progress_text = f"all done \n\n\rvpnhub finished in {stop_time} sec!\n{datetime.datetime.now()}"
            job = "Finalizing output."
        console(
            "\rJob:\t\t " + job + "\nProgress: \t [{0}] {1}%".format("█"*block + "-"*(barLength-block), round(progress*100)) + "\t" + progress_text
        )
        write_log(log_file, f"\rJob:\t {job} \nResult:\t {progress_text}")


def raise_error(message, log_file=None, exit=False, code=config.EXIT_VALIDATION):
    """
    raises warnings or errors, writes to log
    """
    # print to log
    if exit:
        write_log(log_file, f"ERROR: {message}")
    else:
        write_log(log_file, f"WARNING: {message}")
    # print to console. errors are always shown
    if exit:
        print(f"\n\033[31m\033[1mERROR:\033[0m {message}", file=sys.stderr, flush=True)
        sys.exit(code)
    else:
        console(f"\033[31m\033[1mWARNING:\033[0m {message}")


def raise_arg_errors(args, log_file):
    """
    checks arguments for non-valid input. warns about ignored
    options, raises UsageError for unusable ones
    """
    n_min, n_max = config.command_inputs[args.command]
    if not n_min <= len(args.inputs) <= n_max:
        if n_min == n_max:
            expected = str(n_min)
        else:
            expected = f"{n_min}-{n_max}"
        raise UsageError(
            f"{args.command} takes {expected} input file(s), got {len(args.inputs)}."
        )
    if args.shape not in config.shapes:
        raise UsageError(
            f"non valid hub tree shape. Use one of {', '.join(config.shapes)}."
        )
    if args.command == "gen":
        if args.seed is None:
            raise UsageError(
                "gen needs a --seed to be reproducible."
            )
        if args.terminals < 2 or args.terminals > args.nodes:
            raise UsageError(
                "the number of terminals has to be between 2 and the number of nodes."
            )
    elif args.seed is not None:
        raise_error(
            "--seed is only used by gen and ignored",
            log_file
        )
    if args.command == "oracle":
        if args.max_leaves < 2:
            raise UsageError(
                "--max-leaves can not be lower than 2."
            )
        if args.max_leaves > config.ENUMERATION_MAX_LEAVES:
            raise UsageError(
                f"--max-leaves can not exceed {config.ENUMERATION_MAX_LEAVES}."
            )
    elif args.max_leaves != config.ORACLE_MAX_LEAVES:
        raise_error(
            "--max-leaves is for oracle and ignored",
            log_file
        )
    if args.root is not None and args.command != "witness":
        raise_error(
            "--root is for witness and ignored",
            log_file
        )
    if args.plot is not None and args.command not in ("solve", "witness"):
        raise_error(
            "--plot is for solve and witness and ignored",
            log_file
        )
    if args.lp and args.command != "verify":
        raise_error(
            "--lp is for verify and ignored",
            log_file
        )


def confirm_config(log_file):
    """
    checks the config. raises error and warnings
    if nececarry. writes settings to log
    """
    error = False

    # check if all variables exists
    all_vars = [
        "BRUTE_FORCE_LIMIT",
        "ORACLE_MAX_LEAVES",
        "ENUMERATION_MAX_LEAVES",
        "COST_CHOICES",
        "CAPACITY_CHOICES",
        "EXTRA_EDGE_FRACTION",
        "GEN_NODES",
        "GEN_TERMINALS",
        "DECIMAL_PLACES",
    ]

    for var in all_vars:
        if var not in vars(config):
            raise_error(
                f"{var} does not exist in config!",
                log_file
            )
            error = True
    # exit if variables are not defined
    if error:
        raise_error(
            "config is missing parameters. Look at the above warnings!",
            log_file,
            exit=True
        )
    # values that have to be positive
    positive_var = [
        ("brute force limit", config.BRUTE_FORCE_LIMIT),
        ("oracle max leaves", config.ORACLE_MAX_LEAVES),
        ("enumeration max leaves", config.ENUMERATION_MAX_LEAVES),
        ("default number of nodes", config.GEN_NODES),
        ("default number of terminals", config.GEN_TERMINALS),
    ]
    for type, var in positive_var:
        if var <= 0:
            raise_error(
                f"{type} has to be positive!",
                log_file
            )
            error = True
    if config.EXTRA_EDGE_FRACTION < 0:
        raise_error(
            "extra edge fraction can not be negative!",
            log_file
        )
        error = True
    if config.DECIMAL_PLACES < 0:
        raise_error(
            "decimal places can not be negative!",
            log_file
        )
        error = True
    for type, pool in [("cost", config.COST_CHOICES), ("capacity", config.CAPACITY_CHOICES)]:
        if not pool:
            raise_error(
                f"{type} choices can not be empty!",
                log_file
            )
            error = True
        if any(value.startswith("-") for value in pool):
            raise_error(
                f"{type} choices can not contain negative values!",
                log_file
            )
            error = True
    if config.ORACLE_MAX_LEAVES > config.ENUMERATION_MAX_LEAVES:
        raise_error(
            "oracle max leaves should not exceed enumeration max leaves!",
            log_file
        )
        error = True
    # exit if variables are not properly defined
    if error:
        raise_error(
            "config has flaws. Look at the above warnings!",
            log_file,
            exit=True
        )
    # specific warnings
    if config.ORACLE_MAX_LEAVES > 5:
        raise_error(
            "the oracle with more than 5 terminals enumerates hundreds of hub trees and is slow.",
            log_file
        )

    # write all settings to file
    var_dic = vars(config)
    write_log(log_file, "config settings\n")
    for var in all_vars:
        write_log(log_file, f"{var} = {var_dic[var]}")
    write_log(log_file, "\nprogress")
