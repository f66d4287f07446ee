"""Command functions behind every verb of the command line.

Each ``cmd_*`` takes the parsed arguments, prints a ``key: value`` report
whose first lines are the verb and the seed, and returns the exit code:
0 on success, 3 when a verification reports violations.
"""
import argparse
from pathlib import Path
from typing import Any

import numpy as np

from src.ca import (
    CellularAutomaton,
    Configuration,
    Pattern,
    Reached,
    Window,
    cyreach_bounded,
    iterate,
    limit_window,
)
from src.ca.formats import (
    format_coords,
    load_configuration,
    load_pattern,
    load_rule_or_builtin,
    parse_coords,
    save_configuration,
    save_pattern,
    save_rule,
)
from src.ca.render import orbit_image, snapshot_image, write_pgm
from src.classify import (
    ASSUMED_CONVERGENT,
    AtLeastTwo,
    ExactlyOneUniform,
    Freezing,
    Nilpotent,
    change_profile,
    census_fixed_points,
    check_freezing,
    decide_nilpotency_1d,
)
from src.cli.experiment import ExperimentConfig
from src.commproto import (
    DIFFREPORT,
    FoolingSet,
    SplitInstance,
    build_highcc_rule,
    check_fooling_set,
    format_transcript,
    mirror_candidates,
    protocol_curve,
    run_diffreport_protocol,
    run_trivial_protocol,
    write_curve,
)
from src.minsky import (
    Halted,
    HaltsWithH,
    MinskyConfig,
    check_simulation_chain,
    compile_minsky,
    encode_input,
    halting_witness,
    load_machine,
    max_change_witness,
    minsky_run,
)
from src.predict import PredictionInstance, predict_column_search, predict_naive, predict_oneway_stream
from src.szone import build_szone, make_lambda, verify_lemma1
from src.utils import format_report, get_logger, write_report
from src.zoo import build_named, list_entries
from src.zoo.registry import emit

logger = get_logger(__name__)

OK = 0
VERIFICATION_FAILED = 3


def _finish(args: argparse.Namespace, fields: dict[str, Any], code: int = OK) -> int:
    print(format_report(fields), end="")
    if getattr(args, "report", None) is not None:
        write_report(Path(args.report), fields)
    logger.info("=" * 80)
    return code


def _start(args: argparse.Namespace) -> ExperimentConfig:
    config = ExperimentConfig.from_namespace(args)
    logger.info("=" * 80)
    logger.info(f"Running {config.verb} (seed {config.seed})")
    return config


def _initial(args: argparse.Namespace, ca: CellularAutomaton) -> Configuration:
    """Configuration from ``--config``, or uniform in ``--state`` (default the first state)."""
    if getattr(args, "config", None) is not None:
        return load_configuration(Path(args.config), ca.alphabet)
    state = ca.alphabet.id_of(args.state) if getattr(args, "state", None) else 0
    return Configuration.uniform(ca.dimension, state)


def _window(args: argparse.Namespace, dimension: int) -> Window:
    lo = parse_coords(args.lo, dimension=dimension)
    hi = parse_coords(args.hi, dimension=dimension)
    return Window(lo, hi)


def _random_configuration(rng: np.random.Generator, ca: CellularAutomaton, window: Window) -> Configuration:
    values = rng.integers(0, ca.size, size=window.shape)
    return Configuration.from_array(values, window.lo, 0)


def _random_pattern(rng: np.random.Generator, ca: CellularAutomaton, radius: int) -> Pattern:
    return Pattern(rng.integers(0, ca.size, size=(2 * radius + 1,) * ca.dimension))


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _start(args)
    ca = load_rule_or_builtin(args.rule)
    c = _initial(args, ca)
    final = iterate(ca, c, args.steps)
    out = save_configuration(config.output("simulate.cfg", args.out), final, ca.alphabet, config.header(rule=ca.name))
    return _finish(args, config.header(rule=ca.name, steps=args.steps, explicit_cells=len(final.overrides), out=out))


def cmd_render(args: argparse.Namespace) -> int:
    config = _start(args)
    ca = load_rule_or_builtin(args.rule)
    c = _initial(args, ca)
    window = _window(args, ca.dimension)
    if ca.dimension == 1:
        image = orbit_image(ca, c, window, args.steps)
    else:
        image = snapshot_image(ca, iterate(ca, c, args.steps), window)
    out = write_pgm(config.output("render.pgm", args.out), image)
    return _finish(args, config.header(rule=ca.name, steps=args.steps, window=f"{format_coords(window.lo)}:{format_coords(window.hi)}", out=out))


def cmd_classify(args: argparse.Namespace) -> int:
    config = _start(args)
    ca = load_rule_or_builtin(args.rule)
    fields = config.header(rule=ca.name, states=ca.size)
    if args.action == "freezing":
        order = check_freezing(ca)
        fields["freezing"] = isinstance(order, Freezing)
        if isinstance(order, Freezing):
            fields["order"] = ca.alphabet.names(order.linear_extension())
        else:
            fields["cycle"] = ca.alphabet.names(order.cycle)
    elif args.action == "fixedpoints":
        census = census_fixed_points(ca)
        if isinstance(census, AtLeastTwo):
            fields["fixed_points"] = "at-least-two"
        elif isinstance(census, ExactlyOneUniform):
            fields["fixed_points"] = "exactly-one-uniform"
            fields["state"] = ca.alphabet.name_of(census.state)
        else:
            fields["fixed_points"] = "none-found"
    elif args.action == "nilpotent1d":
        certificate = ASSUMED_CONVERGENT if args.assume_convergent else check_freezing(ca)
        verdict = decide_nilpotency_1d(ca, certificate)
        fields["nilpotent"] = isinstance(verdict, Nilpotent)
        if isinstance(verdict, Nilpotent):
            fields["state"] = ca.alphabet.name_of(verdict.state)
    else:
        window = _window(args, ca.dimension)
        rng = config.rng()
        samples = [_random_configuration(rng, ca, window.expanded(ca.radius * args.horizon)) for _ in range(args.samples)]
        profile = change_profile(ca, samples, window, args.horizon)
        fields.update(
            horizon=args.horizon,
            samples=profile.sample_count,
            max_changes=profile.max_changes_observed,
            settled=profile.settled,
        )
    return _finish(args, fields)


def cmd_predict(args: argparse.Namespace) -> int:
    config = _start(args)
    ca = load_rule_or_builtin(args.rule)
    if args.pattern is not None:
        pattern, target = load_pattern(Path(args.pattern), ca.alphabet)
        t = args.t if args.t is not None else pattern.radius // max(ca.radius, 1)
    else:
        t = 1 if args.t is None else args.t
        pattern, target = _random_pattern(config.rng(), ca, ca.radius * t), None
    inst = PredictionInstance(t, pattern, target)
    if args.engine == "stream":
        state = predict_oneway_stream(ca, inst, args.k)
    elif args.engine == "search":
        state = predict_column_search(ca, inst, args.k)
    else:
        state = predict_naive(ca, inst)
    fields = config.header(rule=ca.name, t=t, engine=args.engine, state=ca.alphabet.name_of(state))
    if target is not None:
        fields["answer"] = inst.answer(state)
    return _finish(args, fields)


def cmd_compile(args: argparse.Namespace) -> int:
    config = _start(args)
    machine = load_machine(args.machine)
    compiled = compile_minsky(machine)
    label = machine.name or "machine"
    out = save_rule(config.output(f"{label}.rule", args.out), compiled.ca, config.header(machine=machine.name))
    fields = config.header(machine=machine.name, states=compiled.ca.size, counters=compiled.counters, K=compiled.K, out=out)
    if args.chis is not None:
        chis = tuple(args.chis)
        fields["input"] = save_pattern(config.output(f"{label}_input.pat"), encode_input(compiled, chis),
                                       compiled.ca.alphabet, header=config.header(counters=chis))
    return _finish(args, fields)


def _inner_configuration(rng: np.random.Generator, inner: CellularAutomaton, n: int) -> Configuration:
    return _random_configuration(rng, inner, Window.interval(-n, n))


def cmd_szone(args: argparse.Namespace) -> int:
    config = _start(args)
    inner = load_rule_or_builtin(args.inner)
    szone = build_szone(inner)
    fields = config.header(inner=inner.name, states=szone.ca.size)
    if args.action == "build":
        fields["out"] = save_rule(config.output(f"{szone.ca.name}.rule", args.out), szone.ca, config.header(inner=inner.name))
        return _finish(args, fields)
    c = _inner_configuration(config.rng(), inner, args.n)
    if args.action == "lambda":
        seeded = make_lambda(szone, args.n, c)
        fields["n"] = args.n
        fields["out"] = save_configuration(config.output(f"lambda{args.n}.cfg", args.out), seeded.realized, szone.ca.alphabet, config.header(n=args.n))
        return _finish(args, fields)
    report = verify_lemma1(szone, c, args.n, args.t)
    fields.update(n=args.n, t=args.t, steps=report.steps, mismatches=len(report.mismatches),
                  malformed=len(report.form_violations), passed=report.passed)
    return _finish(args, fields, OK if report.passed else VERIFICATION_FAILED)


def cmd_commcc(args: argparse.Namespace) -> int:
    config = _start(args)
    ca = load_rule_or_builtin(args.rule)
    rng = config.rng()
    instances = [SplitInstance.from_pattern(n, _random_pattern(rng, ca, ca.radius * n)) for n in args.n]
    fields = config.header(rule=ca.name, protocol=args.protocol)
    wrong = 0
    for inst in instances:
        if args.protocol == DIFFREPORT:
            transcript = run_diffreport_protocol(ca, inst, args.k)
        else:
            transcript = run_trivial_protocol(ca, inst)
        expected = predict_naive(ca, inst.prediction())
        wrong += transcript.answer != expected
        fields[f"bits_n{inst.n}"] = transcript.total_bits
        if args.transcripts:
            path = config.output(f"{args.protocol}_n{inst.n}.transcript")
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(format_transcript(transcript, ca.alphabet))
    fields["wrong_answers"] = wrong
    if args.csv is not None:
        fields["csv"] = write_curve(Path(args.csv), protocol_curve(ca, instances, args.k))
    return _finish(args, fields, OK if wrong == 0 else VERIFICATION_FAILED)


def cmd_reach(args: argparse.Namespace) -> int:
    config = _start(args)
    ca = load_rule_or_builtin(args.rule)
    u, _ = load_pattern(Path(args.u), ca.alphabet)
    v, _ = load_pattern(Path(args.v), ca.alphabet)
    backgrounds = [ca.alphabet.id_of(name) for name in args.background] if args.background else None
    result = cyreach_bounded(ca, u, v, args.t_max, args.extension, backgrounds)
    fields = config.header(rule=ca.name, t_max=args.t_max, reached=isinstance(result, Reached))
    if isinstance(result, Reached):
        fields["time"] = result.time
        fields["witness"] = save_configuration(config.output("reach_witness.cfg", args.out), result.witness, ca.alphabet, config.header())
    else:
        fields.update(candidates=result.candidates, exhausted=result.exhausted)
    return _finish(args, fields)


def cmd_limit(args: argparse.Namespace) -> int:
    config = _start(args)
    ca = load_rule_or_builtin(args.rule)
    c = _initial(args, ca)
    result = limit_window(ca, c, _window(args, ca.dimension), args.horizon, args.confirm_tail)
    fields = config.header(rule=ca.name, complete=result.complete)
    for cell, report in result.reports.items():
        state = "-" if report.limit_state is None else ca.alphabet.name_of(report.limit_state)
        fields[f"cell {format_coords(cell)}"] = f"{state} t={report.freezing_time} {report.guarantee}"
    return _finish(args, fields)


def cmd_zoo(args: argparse.Namespace) -> int:
    config = _start(args)
    fields = config.header()
    if args.action == "list":
        for entry in list_entries():
            fields[entry.name] = f"{entry.expected_class} {entry.description}"
        return _finish(args, fields)
    out = emit(args.name, config.output(f"{args.name}.rule", args.out), config.header(name=args.name))
    fields.update(name=args.name, states=build_named(args.name).size, out=out)
    return _finish(args, fields)


def _verify_minsky(args: argparse.Namespace, config: ExperimentConfig) -> int:
    machine = load_machine(args.machine)
    compiled = compile_minsky(machine)
    chis = tuple(args.chis) if args.chis else (0,) * machine.counters
    t_max = args.t_max
    run = minsky_run(machine, MinskyConfig.initial(machine, chis), t_max)
    steps = run.time if isinstance(run, Halted) else min(t_max, 8)
    chain = check_simulation_chain(compiled, chis, steps)
    witness = halting_witness(compiled, chis, args.horizon)
    fields = config.header(machine=machine.name, counters=chis, halts=isinstance(run, Halted),
                           columns=len(chain.readings), mismatches=len(chain.mismatches),
                           h_at_origin=witness.time if isinstance(witness, HaltsWithH) else None)
    passed = chain.passed and isinstance(witness, HaltsWithH) == isinstance(run, Halted)
    if args.changes:
        fields["max_changes"] = max_change_witness(compiled).changes
    fields["passed"] = passed
    return _finish(args, fields, OK if passed else VERIFICATION_FAILED)


def cmd_verify(args: argparse.Namespace) -> int:
    config = _start(args)
    if args.action == "minsky":
        return _verify_minsky(args, config)
    if args.action == "lemma1":
        inner = load_rule_or_builtin(args.inner)
        szone = build_szone(inner)
        rng = config.rng()
        fields = config.header(inner=inner.name, n=args.n)
        failed = 0
        for t in range(1, args.n + 1):
            report = verify_lemma1(szone, _inner_configuration(rng, inner, args.n), args.n, t)
            fields[f"t{t}"] = "pass" if report.passed else f"{len(report.mismatches)} mismatches, {len(report.form_violations)} malformed"
            failed += not report.passed
        fields["passed"] = failed == 0
        return _finish(args, fields, OK if failed == 0 else VERIFICATION_FAILED)
    ca = build_highcc_rule(args.d)
    result = check_fooling_set(ca, args.n, mirror_candidates(args.d, args.n))
    fields = config.header(rule=ca.name, n=args.n, verified=isinstance(result, FoolingSet))
    if isinstance(result, FoolingSet):
        fields.update(size=result.size, lower_bound_bits=f"{result.lower_bound_bits:g}")
    else:
        fields.update(pair=(result.i, result.j))
    return _finish(args, fields, OK if isinstance(result, FoolingSet) else VERIFICATION_FAILED)


COMMANDS = {
    "simulate": cmd_simulate,
    "render": cmd_render,
    "classify": cmd_classify,
    "predict": cmd_predict,
    "compile": cmd_compile,
    "szone": cmd_szone,
    "commcc": cmd_commcc,
    "reach": cmd_reach,
    "limit": cmd_limit,
    "zoo": cmd_zoo,
    "verify": cmd_verify,
}
