# PURPOSE: Reserved tokens of the `.ma` format and engine-wide defaults.
# CONTEXT: Shared by the model types, the parser/printer and the settings object.

TAU_TOKEN = "tau"
CHI_PREFIX = "chi("
CHI_SUFFIX = ")"

MA_HEADER = "markov_automaton"
PA_HEADER = "prob_automaton"

# Display prefixes of the two summands of a direct sum.
LEFT_PREFIX = "P1."
RIGHT_PREFIX = "P2."

PAIR_SEPARATOR = "|"
FRESH_SUFFIX = "'"

DEFAULTS = {
    "sched_limit": 200_000,
    "oracle_bound": 6,
    "chi_zero": True,
    "preprocess": True,
}

ENV_VARS = {
    "sched_limit": "MABISIM_SCHED_LIMIT",
    "oracle_bound": "MABISIM_ORACLE_BOUND",
    "chi_zero": "MABISIM_CHI_ZERO",
    "preprocess": "MABISIM_PREPROCESS",
}
