"""Naming game with learning errors: seeded simulator and experiment helpers.

The heavy lifting lives in the compiled :mod:`ngle._ngle` extension; this
package re-exports its surface.
"""

from ._ngle import (
    ErrorMode,
    ExperimentPlan,
    Graph,
    NetworkSpec,
    barabasi_albert,
    erdos_renyi,
    find_threshold,
    generate,
    interval_histogram,
    linear_fit,
    studied_error_rates,
    run_game,
    run_sweep,
    run_trials,
    watts_strogatz,
)

__all__ = [
    "ErrorMode",
    "ExperimentPlan",
    "Graph",
    "NetworkSpec",
    "barabasi_albert",
    "erdos_renyi",
    "find_threshold",
    "generate",
    "interval_histogram",
    "linear_fit",
    "studied_error_rates",
    "run_game",
    "run_sweep",
    "run_trials",
    "watts_strogatz",
]
