# security/allowlists.py
"""
Allowlists for user-facing inputs.
Defines which solvers, schedules and file types the tools accept.
"""

# Solver tags accepted by solve / bench
ALLOWED_SOLVERS = [
    "greedy",    # largest-first with dummy color
    "heat",      # heat diffusion
    "tabucol",   # tabu search
]

# Diffusion time schedules
ALLOWED_SCHEDULES = [
    "linear",
    "geometric",
]

# Initial location modes
ALLOWED_THETA_INIT = [
    "uniform",
    "constant_half",
]

# What the softmax target is evaluated on
ALLOWED_TARGET_INPUTS = [
    "smoothed",  # erf((theta - x) / sqrt(2 tau))
    "raw",       # theta itself
]

# Graph files picked up by the benchmark harness
ALLOWED_GRAPH_SUFFIXES = [
    ".col",
]
