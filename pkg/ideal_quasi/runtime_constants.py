from __future__ import annotations

import re


RS_TYPE_A = "A"
RS_TYPE_B = "B"
RS_TYPE_C = "C"
RS_TYPE_D = "D"
RS_TYPES = (RS_TYPE_A, RS_TYPE_B, RS_TYPE_C, RS_TYPE_D)
# Rang minimal accepté par le constructeur public, par type.
MIN_RANK = {RS_TYPE_A: 1, RS_TYPE_B: 2, RS_TYPE_C: 2, RS_TYPE_D: 3}
# Rang minimal des sous-systèmes dégénérés atteints par réduction (B_1, C_1, D_2).
MIN_DEGENERATE_RANK = {RS_TYPE_A: 1, RS_TYPE_B: 1, RS_TYPE_C: 1, RS_TYPE_D: 2}

KIND_DIFF = "diff"
KIND_SUM = "sum"
KIND_SHORT = "short"
KIND_LONG = "long"
KIND_ORDER = {KIND_DIFF: 0, KIND_SUM: 1, KIND_SHORT: 2, KIND_LONG: 3}

BASIS_SIMPLE = "simple"
BASIS_ORTHONORMAL = "orthonormal"

LATTICE_T = "T"
LATTICE_S = "S"
LATTICES = (LATTICE_T, LATTICE_S)

PARITY_ODD = "odd"
PARITY_EVEN = "even"
PARITIES = (PARITY_ODD, PARITY_EVEN)

METHOD_ORACLE = "oracle"
METHOD_CLOSED = "closed"
METHOD_BOTH = "both"
METHODS = (METHOD_ORACLE, METHOD_CLOSED, METHOD_BOTH)

FORMAT_JSON = "json"
FORMAT_TSV = "tsv"
FORMATS = (FORMAT_JSON, FORMAT_TSV)

TABLE_ALL = "all"
TABLE_HEIGHTS = "heights"
TABLE_B_PARTITION = "bpartition"
TABLE_SIGNED = "signed"
TABLE_DERIVED = "derived"
TABLE_PAPER = "paper"
TABLE_LAYOUTS = (TABLE_ALL, TABLE_PAPER, TABLE_HEIGHTS, TABLE_B_PARTITION, TABLE_SIGNED, TABLE_DERIVED)
# Dispositions qui produisent les sections des exemples traités.
TABLE_WORKED_EXAMPLES = (TABLE_ALL, TABLE_PAPER)

DEFAULT_WORK_BUDGET = 2_000_000_000
DEFAULT_WORKERS = 1
IDEAL_ENUMERATION_GUARD = 10_000_000
DEFAULT_SUBSET_BUDGET = 1 << 20
DEFAULT_CACHE_MAX_ENTRIES = 500_000
DEFAULT_PERIOD_CANDIDATES = (1, 2)
HELD_OUT_POINTS = 2
CONTRACTION_CHECK_QS = (3, 4, 5)

# Points de contrôle de la commande verify.
VERIFY_EVEN_QS = (2, 4, 6, 8, 10, 12)
VERIFY_ODD_QS = (3, 5, 7, 9, 11)
VERIFY_SUM_IDENTITY_QS = tuple(range(1, 11))

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

ROOT_LITERAL_RE = re.compile(r"^(?:(?P<long>2)e(?P<li>\d+)|e(?P<i>\d+)(?:(?P<sign>[+-])e(?P<j>\d+))?)$")
HEIGHT_CUT_RE = re.compile(r"^ht<=(?P<h>\d+)$")
GENERATORS_PREFIX = "gen:"
COUNT_LOG_WORK_THRESHOLD = 1_000_000
