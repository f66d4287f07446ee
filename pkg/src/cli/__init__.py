"""Command-line surface: verbs, experiment files and dispatch."""
from src.cli.app import build_parser, parse_args, run
from src.cli.commands import (
    COMMANDS,
    OK,
    VERIFICATION_FAILED,
    cmd_classify,
    cmd_commcc,
    cmd_compile,
    cmd_limit,
    cmd_predict,
    cmd_reach,
    cmd_render,
    cmd_simulate,
    cmd_szone,
    cmd_verify,
    cmd_zoo,
)
from src.cli.experiment import ExperimentConfig

__all__ = [
    "build_parser",
    "parse_args",
    "run",
    "COMMANDS",
    "OK",
    "VERIFICATION_FAILED",
    "cmd_classify",
    "cmd_commcc",
    "cmd_compile",
    "cmd_limit",
    "cmd_predict",
    "cmd_reach",
    "cmd_render",
    "cmd_simulate",
    "cmd_szone",
    "cmd_verify",
    "cmd_zoo",
    "ExperimentConfig",
]
