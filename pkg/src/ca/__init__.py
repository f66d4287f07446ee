"""Cellular automata core: rules, configurations, simulation and file formats."""
from src.ca.alphabet import Alphabet, Neighborhood, Position, as_position
from src.ca.automaton import STATE_DTYPE, CellularAutomaton, check_dimension, tabulate
from src.ca.configuration import (
    Background,
    Configuration,
    Pattern,
    PeriodicBackground,
    SplitBackground,
    UniformBackground,
    Window,
    as_background,
)
from src.ca.dynamics import (
    CONFIRMED_TAIL,
    STABLE_STATE,
    UNWITNESSED,
    FreezingReport,
    LimitWindow,
    Trace,
    apply_to_pattern,
    chi,
    freezing_report,
    iterate,
    limit_window,
    orbit_window,
    simulate,
    step,
    trace,
)
from src.ca.errors import (
    CAError,
    DimensionMismatchError,
    FormatError,
    PreconditionError,
    UnknownStateError,
)
from src.ca.reach import Reached, ReachResult, Unknown, cyreach_bounded

__all__ = [
    "Alphabet",
    "Neighborhood",
    "Position",
    "as_position",
    "STATE_DTYPE",
    "CellularAutomaton",
    "check_dimension",
    "tabulate",
    "Background",
    "Configuration",
    "Pattern",
    "PeriodicBackground",
    "SplitBackground",
    "UniformBackground",
    "Window",
    "as_background",
    "CONFIRMED_TAIL",
    "STABLE_STATE",
    "UNWITNESSED",
    "FreezingReport",
    "LimitWindow",
    "Trace",
    "apply_to_pattern",
    "chi",
    "freezing_report",
    "iterate",
    "limit_window",
    "orbit_window",
    "simulate",
    "step",
    "trace",
    "CAError",
    "DimensionMismatchError",
    "FormatError",
    "PreconditionError",
    "UnknownStateError",
    "Reached",
    "ReachResult",
    "Unknown",
    "cyreach_bounded",
]
