"""Text templates for the command-line interface.

This module contains the help strings and human-readable output lines used
by the subcommands.
"""

# ============================================================================
# Program
# ============================================================================

PROGRAM_DESCRIPTION = """
Lusternik-Schnirelmann category toolkit for finite simple graphs.

Graphs are given as fixture:NAME, a file (edge list, graph6 or JSON, sniffed
by extension) or - for an edge list on standard input.
"""

EXIT_CODES_EPILOG = """
exit codes:
  0  success
  1  verified negative (not contractible, distinct, invalid certificate)
  2  unknown within budget, or a size limit refused the request
  3  input error
"""

# ============================================================================
# Subcommand help
# ============================================================================

COMMAND_HELP = {
    "invariants": "f-vector, chi, Betti numbers, cup length, crit and category brackets",
    "contractible": "decide contractibility with a removal witness",
    "reduce": "remove contractible-sphere vertices until none is left",
    "crit": "minimal number of critical points with a witness ordering",
    "cup": "cup length with a nonvanishing product",
    "category": "tcat, gcat, cat, Cat and cri brackets",
    "curvature": "Euler, Betti or category curvature per vertex",
    "ph-check": "Poincare-Hopf indices of an ordering and their sum",
    "morse-check": "Morse classification and Morse inequalities of an ordering",
    "cover-verify": "check a cover by contractible subgraphs",
    "homotopic": "bounded homotopy search between two graphs",
    "certificate-verify": "replay a homotopy certificate",
    "census": "homotopy types of connected graphs of a given order",
    "fixtures": "list fixtures or emit one as JSON",
}

ORDERING_HELP = "random:SEED, natural, metadata:NAME or a JSON file (vertex list or vertex -> rank map)"

CURVATURE_WHICH_HELP = "euler, betti:K or category"

CURVATURE_METHOD_HELP = "exact or mc:SAMPLES (default: exact when small enough)"

# ============================================================================
# Output lines
# ============================================================================

ERROR_LINE = "[Error]: {message}"

ERROR_POSITION_LINE = "[Error]: {message} (at {position})"

KEY_VALUE_LINE = "{key:<{width}}  {value}"
