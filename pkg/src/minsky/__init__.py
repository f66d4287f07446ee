"""Counter machines and their compilation into freezing automata."""
from src.minsky.columns import (
    FROZEN,
    INDETERMINATE,
    ChangeWitness,
    ColumnIndeterminateError,
    ColumnReading,
    HaltingWitness,
    HaltsWithH,
    NoHWithinBound,
    SimulationChain,
    SimulationCheck,
    check_simulation_chain,
    default_horizon,
    halting_witness,
    max_change_witness,
    read_column,
    read_columns,
    verify_correct_simulation,
)
from src.minsky.compiler import (
    CompiledMinskyCA,
    canonical_configuration,
    compile_minsky,
    countdown_configuration,
    encode_input,
)
from src.minsky.machine import (
    BUILTIN_MACHINES,
    Halted,
    MachineError,
    MinskyConfig,
    MinskyMachine,
    Running,
    builtin_machine,
    format_machine,
    load_machine,
    minsky_run,
    minsky_step,
    parse_machine,
    trajectory,
)

__all__ = [
    "FROZEN",
    "INDETERMINATE",
    "ChangeWitness",
    "ColumnIndeterminateError",
    "ColumnReading",
    "HaltingWitness",
    "HaltsWithH",
    "NoHWithinBound",
    "SimulationChain",
    "SimulationCheck",
    "check_simulation_chain",
    "default_horizon",
    "halting_witness",
    "max_change_witness",
    "read_column",
    "read_columns",
    "verify_correct_simulation",
    "CompiledMinskyCA",
    "canonical_configuration",
    "compile_minsky",
    "countdown_configuration",
    "encode_input",
    "BUILTIN_MACHINES",
    "Halted",
    "MachineError",
    "MinskyConfig",
    "MinskyMachine",
    "Running",
    "builtin_machine",
    "format_machine",
    "load_machine",
    "minsky_run",
    "minsky_step",
    "parse_machine",
    "trajectory",
]
