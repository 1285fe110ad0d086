"""
This contains all vpnhub parameters. Options that can be adjusted by arguments
are ORACLE_MAX_LEAVES (--max-leaves) and the sizes of generated instances
(--nodes, --terminals).
"""

# CAN BE CHANGED

# search limits
BRUTE_FORCE_LIMIT = 10**6  # max number of hub placements tried by the brute force oracle
ORACLE_MAX_LEAVES = 5  # max number of terminals for the hub tree oracle
ENUMERATION_MAX_LEAVES = 6  # hard cap for the hub tree enumeration

# random instances
COST_CHOICES = ("1", "2", "3", "1/2", "3/2")  # edge costs are drawn from these
CAPACITY_CHOICES = ("1", "2", "3", "1/2", "5/2")  # hub tree capacities are drawn from these
EXTRA_EDGE_FRACTION = 0.5  # extra non-tree edges per node in random networks
GEN_NODES = 8  # default number of network nodes
GEN_TERMINALS = 4  # default number of terminals

# reporting
DECIMAL_PLACES = 6  # decimal approximation printed next to exact costs
DOT_TERMINAL_COLOR = "darkorange"
DOT_HUB_COLOR = "lightblue"
DOT_CABLE_COLOR = "red"
PLOT_SIZE = (12, 5)  # allocation plot (width, height)


# DO NOT CHANGE
# shapes of generated hub trees
shapes = ("star", "caterpillar", "random-tree")
# cli commands
commands = ("solve", "witness", "compose", "verify", "oracle", "gen", "dot")
# number of input files needed per command (min, max)
command_inputs = {
    "solve": (1, 1),
    "witness": (1, 1),
    "compose": (2, 2),
    "verify": (2, 2),
    "oracle": (1, 1),
    "gen": (0, 0),
    "dot": (1, 2)
}
# exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3
