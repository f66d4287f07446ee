"""Argument parsing and dispatch for the ``freezeca`` command line."""
import argparse
from pathlib import Path
from typing import Optional, Sequence

from src.cli.commands import COMMANDS
from src.cli.experiment import ExperimentConfig
from src.config import Config
from src.utils import attach_run_log, detach_run_log, get_logger

logger = get_logger(__name__)

USAGE_ERROR = 2


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help=f"Seed for random sampling (default: {Config.DEFAULT_SEED})")
    common.add_argument("--output-dir", type=Path, help="Directory for emitted files (default: CA_OUTPUT_DIR)")
    common.add_argument("--report", type=Path, help="Also write the key: value report to this file")
    common.add_argument("--log-file", type=Path, help="Also write every log record of the run to this file")
    return common


def _initial_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-r", "--rule", required=True, help="Rule file or zoo rule name")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("-c", "--config", type=Path, help="Initial configuration file")
    source.add_argument("--state", help="Start from the uniform configuration in this state")


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per verb."""
    parser = argparse.ArgumentParser(
        prog="freezeca",
        description="Simulation and analysis toolkit for freezing, bounded-change and convergent cellular automata",
    )
    parser.add_argument("--experiment", type=Path, help="Run the verb and options listed in an experiment file")
    common = _common()
    verbs = parser.add_subparsers(dest="verb", required=True)

    simulate = verbs.add_parser("simulate", parents=[common], help="Iterate a rule from a configuration")
    _initial_options(simulate)
    simulate.add_argument("--steps", type=int, default=1, help="Number of steps (default: 1)")
    simulate.add_argument("-o", "--out", type=Path, help="Output configuration file")

    render = verbs.add_parser("render", parents=[common], help="Write a PGM image of an orbit or snapshot")
    _initial_options(render)
    render.add_argument("--steps", type=int, default=16, help="Number of steps (default: 16)")
    render.add_argument("--lo", required=True, help="Lower window corner, e.g. -8 or -4,-4")
    render.add_argument("--hi", required=True, help="Upper window corner")
    render.add_argument("-o", "--out", type=Path, help="Output PGM file")

    classify = verbs.add_parser("classify", parents=[common], help="Decide or estimate dynamical classes")
    classify.add_argument("action", choices=["freezing", "changes", "nilpotent1d", "fixedpoints"])
    classify.add_argument("-r", "--rule", required=True, help="Rule file or zoo rule name")
    classify.add_argument("--assume-convergent", action="store_true",
                          help="Take convergence as given instead of requiring a freezing order")
    classify.add_argument("--lo", default="-8", help="Lower corner of the sampled window (default: -8)")
    classify.add_argument("--hi", default="8", help="Upper corner of the sampled window (default: 8)")
    classify.add_argument("--horizon", type=int, default=32, help="Steps per sampled orbit (default: 32)")
    classify.add_argument("--samples", type=int, default=16, help="Number of random configurations (default: 16)")

    predict = verbs.add_parser("predict", parents=[common], help="Predict the centre state after t steps")
    predict.add_argument("-r", "--rule", required=True, help="Rule file or zoo rule name")
    predict.add_argument("-p", "--pattern", type=Path, help="Pattern file (default: a random pattern)")
    predict.add_argument("--t", type=int, help="Number of steps (default: pattern radius over rule radius)")
    predict.add_argument("--engine", choices=["naive", "stream", "search"], default="naive")
    predict.add_argument("--k", type=int, help="Change bound for the stream and search engines")

    compile_ = verbs.add_parser("compile", parents=[common], help="Compile a counter machine into a freezing rule")
    compile_.add_argument("action", choices=["minsky"])
    compile_.add_argument("machine", help="Machine file or built-in machine name")
    compile_.add_argument("--chis", type=int, nargs="+", help="Also emit the encoded input for these counters")
    compile_.add_argument("-o", "--out", type=Path, help="Output rule file")

    szone = verbs.add_parser("szone", parents=[common], help="Shrinking-zone construction")
    szone.add_argument("action", choices=["build", "lambda", "verify"])
    szone.add_argument("--inner", default="max2", help="Inner radius-1 rule (default: max2)")
    szone.add_argument("--n", type=int, default=3, help="Zone half-width (default: 3)")
    szone.add_argument("--t", type=int, default=1, help="Passes to verify (default: 1)")
    szone.add_argument("-o", "--out", type=Path, help="Output file")

    commcc = verbs.add_parser("commcc", parents=[common], help="Meter split-input prediction protocols")
    commcc.add_argument("-r", "--rule", required=True, help="Rule file or zoo rule name")
    commcc.add_argument("--protocol", choices=["trivial", "diffreport"], default="diffreport")
    commcc.add_argument("--n", type=int, nargs="+", default=[8], help="Instance sizes (default: 8)")
    commcc.add_argument("--k", type=int, help="Change bound the protocol checks (default: unchecked)")
    commcc.add_argument("--transcripts", action="store_true", help="Write one transcript file per size")
    commcc.add_argument("--csv", type=Path, help="Write the bits-vs-n curve of both protocols")

    reach = verbs.add_parser("reach", parents=[common], help="Bounded search for a pattern reaching another")
    reach.add_argument("-r", "--rule", required=True, help="Rule file or zoo rule name")
    reach.add_argument("--u", required=True, type=Path, help="Source pattern file")
    reach.add_argument("--v", required=True, type=Path, help="Target pattern file")
    reach.add_argument("--t-max", type=int, default=16, help="Largest number of steps (default: 16)")
    reach.add_argument("--extension", type=int, default=0, help="Extra cells around u to enumerate (default: 0)")
    reach.add_argument("--background", nargs="+", help="Background states to try (default: all)")
    reach.add_argument("-o", "--out", type=Path, help="Output witness configuration")

    limit = verbs.add_parser("limit", parents=[common], help="Limit states of a window")
    _initial_options(limit)
    limit.add_argument("--lo", required=True, help="Lower window corner")
    limit.add_argument("--hi", required=True, help="Upper window corner")
    limit.add_argument("--horizon", type=int, help=f"Steps to simulate (default: {Config.DEFAULT_HORIZON})")
    limit.add_argument("--confirm-tail", type=int,
                       help=f"Constant steps that confirm a limit (default: {Config.DEFAULT_CONFIRM_TAIL})")

    zoo = verbs.add_parser("zoo", parents=[common], help="List or emit named rules")
    zoo.add_argument("action", choices=["list", "emit"])
    zoo.add_argument("name", nargs="?", help="Rule to emit")
    zoo.add_argument("-o", "--out", type=Path, help="Output rule file")

    verify = verbs.add_parser("verify", parents=[common], help="Check constructions against brute force")
    verify.add_argument("action", choices=["minsky", "lemma1", "fooling"])
    verify.add_argument("--machine", default="bounce", help="Machine file or built-in name (default: bounce)")
    verify.add_argument("--chis", type=int, nargs="+", help="Initial counters (default: all zero)")
    verify.add_argument("--t-max", type=int, default=Config.DEFAULT_HORIZON, help="Machine step bound")
    verify.add_argument("--horizon", type=int, default=Config.DEFAULT_HORIZON, help="Automaton step bound")
    verify.add_argument("--changes", action="store_true", help="Also report the maximum-change witness")
    verify.add_argument("--inner", default="max2", help="Inner rule of the zone check (default: max2)")
    verify.add_argument("--n", type=int, help="Zone half-width or fooling-set size parameter")
    verify.add_argument("--d", type=int, default=1, help="Dimension of the fooling-set rule (default: 1)")
    return parser


def _check(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.verb == "predict" and args.engine != "naive" and args.k is None:
        parser.error(f"--k is required for the {args.engine} engine")
    if args.verb == "zoo" and args.action == "emit" and not args.name:
        parser.error("zoo emit needs a rule name")
    if args.verb == "verify" and args.n is None:
        args.n = 6 if args.action == "fooling" else 4


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse ``argv``, expanding ``--experiment FILE`` into the file's verb and options."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--experiment", type=Path)
    known, rest = pre.parse_known_args(argv)
    if known.experiment is not None:
        rest = ExperimentConfig.from_file(known.experiment).to_argv() + rest
        logger.info(f"Expanded experiment {known.experiment}: {' '.join(rest)}")
    parser = build_parser()
    args = parser.parse_args(rest)
    _check(parser, args)
    return args


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one verb and return its exit code.

    0 on success, 1 on any error, 2 on usage errors and 3 when a
    verification reports violations.
    """
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    except Exception as e:
        logger.error(f"Failed to read arguments: {str(e)}")
        return 1
    try:
        Config.validate()
        if args.log_file is not None:
            attach_run_log(args.log_file)
        return COMMANDS[args.verb](args)
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        return 0
    except Exception as e:
        logger.error(f"Fatal error: {str(e)}", exc_info=True)
        return 1
    finally:
        detach_run_log()
