"""Read machine runs back out of F_M orbits and check them against the interpreter."""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from src.ca import Configuration, PreconditionError, Window
from src.ca.dynamics import UNWITNESSED, column_report, orbit_window, step
from src.config import Config
from src.minsky.compiler import (
    COUNTER,
    ONE,
    TAGGED,
    CompiledMinskyCA,
    canonical_configuration,
    countdown_configuration,
    symbol_name,
)
from src.minsky.machine import Halted, MinskyConfig, minsky_run, minsky_step, trajectory
from src.utils import get_logger

logger = get_logger(__name__)

FROZEN = "frozen"
INDETERMINATE = "indeterminate"


class ColumnIndeterminateError(ValueError):
    """A column did not settle within the horizon."""


@dataclass(frozen=True)
class ColumnReading:
    """What the trace of one cell says about the simulated machine.

    ``counter_values[i]`` is None when counter i never closed (no ``#-1``)
    within the horizon.
    """

    cell: int
    valid: bool
    m_state: Optional[str]
    counter_values: tuple[Optional[int], ...]
    status: str
    halted: bool
    changes: int

    def config(self) -> Optional[MinskyConfig]:
        if self.m_state is None or any(v is None for v in self.counter_values):
            return None
        return MinskyConfig(self.m_state, self.counter_values)


@dataclass(frozen=True)
class SimulationCheck:
    cell: int
    decoded: MinskyConfig
    expected: MinskyConfig
    observed: ColumnReading
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class SimulationChain:
    """Readings of columns 0 .. n-1 next to the interpreter's trajectory."""

    readings: tuple[ColumnReading, ...]
    trajectory: tuple[MinskyConfig, ...]
    checks: tuple[SimulationCheck, ...]
    mismatches: tuple[str, ...]
    horizon: int

    @property
    def passed(self) -> bool:
        return not self.mismatches and all(check.passed for check in self.checks)


@dataclass(frozen=True)
class HaltsWithH:
    time: int


@dataclass(frozen=True)
class NoHWithinBound:
    t_max: int


HaltingWitness = Union[HaltsWithH, NoHWithinBound]


@dataclass(frozen=True)
class ChangeWitness:
    changes: int
    sequence: tuple[str, ...]


def default_horizon(compiled: CompiledMinskyCA, steps: int, max_counter: int, width: int = 0) -> int:
    """Steps needed to read ``steps`` columns whose counters stay below ``max_counter``."""
    return steps * (max_counter + 4) + compiled.K + width + 8


def reading_from_column(
    compiled: CompiledMinskyCA,
    cell: int,
    column: Sequence[int],
    confirm_tail: Optional[int] = None,
) -> ColumnReading:
    """Decode the states one cell went through."""
    confirm_tail = Config.DEFAULT_CONFIRM_TAIL if confirm_tail is None else confirm_tail
    column = [int(q) for q in column]
    symbols = [compiled.symbol_of(q) for q in column]
    k = compiled.counters
    wall_seen = compiled.wall in column
    closing = [[] for _ in range(k)]
    ones = [0] * k
    for s in symbols:
        if s.kind != COUNTER:
            continue
        for i, (mark, _) in enumerate(s.cells):
            if mark == ONE:
                ones[i] += 1
            elif not closing[i] or closing[i][-1] != mark:
                closing[i].append(mark)
    closed = [_has_subsequence(marks, (-1, 0, 1)) for marks in closing]
    controls = {s.state for s in symbols if s.kind == TAGGED}
    tags = {s for s in symbols if s.kind == TAGGED}
    report = column_report(compiled.ca, (cell,), column, confirm_tail)
    return ColumnReading(
        cell=cell,
        valid=all(closed) and not wall_seen,
        m_state=next(iter(controls)) if len(tags) == 1 else None,
        counter_values=tuple(ones[i] if -1 in closing[i] else None for i in range(k)),
        status=INDETERMINATE if report.guarantee == UNWITNESSED else FROZEN,
        halted=compiled.halt in column,
        changes=report.changes,
    )


def _has_subsequence(items: Sequence[int], wanted: Sequence[int]) -> bool:
    it = iter(items)
    return all(any(x == w for x in it) for w in wanted)


def read_columns(
    compiled: CompiledMinskyCA,
    c: Configuration,
    cells: Iterable[int],
    horizon: Optional[int] = None,
    start: int = 0,
) -> dict[int, ColumnReading]:
    """Read several cells from a single simulation, from time ``start`` on."""
    cells = sorted(set(int(z) for z in cells))
    horizon = Config.DEFAULT_HORIZON if horizon is None else horizon
    history = orbit_window(compiled.ca, c, Window.interval(cells[0], cells[-1]), horizon)
    return _readings(compiled, history, cells[0], cells, start)


def _readings(compiled, history: np.ndarray, lo: int, cells: Iterable[int], start: int = 0) -> dict[int, ColumnReading]:
    return {z: reading_from_column(compiled, z, history[start:, z - lo]) for z in cells}


def read_column(
    compiled: CompiledMinskyCA,
    c: Configuration,
    z: int,
    horizon: Optional[int] = None,
    strict: bool = False,
) -> ColumnReading:
    """Machine state and counter values recorded by the trace of cell ``z``.

    A reading whose cell did not provably freeze within the horizon has
    status ``indeterminate``.

    Raises:
        ColumnIndeterminateError: If ``strict`` and the reading is indeterminate
    """
    reading = read_columns(compiled, c, [z], horizon)[z]
    if strict and reading.status == INDETERMINATE:
        raise ColumnIndeterminateError(f"Cell {z} did not freeze within the horizon")
    return reading


def _check(compiled: CompiledMinskyCA, history: np.ndarray, lo: int, t: int, z: int) -> SimulationCheck:
    row = history[t]
    if compiled.symbol_of(row[z - lo]).kind != TAGGED:
        raise PreconditionError(f"Cell {z} holds {compiled.ca.alphabet.name_of(row[z - lo])}, not a tagged control state")
    if row[z + 1 - lo] != compiled.blank:
        raise PreconditionError(f"Cell {z + 1} is {compiled.ca.alphabet.name_of(row[z + 1 - lo])}, not blank")
    readings = _readings(compiled, history, lo, (z, z + 1), t)
    here, observed = readings[z], readings[z + 1]
    if not here.valid:
        raise PreconditionError(f"The trace at cell {z} is not valid")
    decoded = MinskyConfig(compiled.symbol_of(row[z - lo]).state, here.counter_values)
    expected = minsky_step(compiled.machine, decoded)
    violations = []
    if not observed.valid:
        violations.append(f"trace at cell {z + 1} is not valid")
    if observed.m_state != expected.state:
        violations.append(f"cell {z + 1}: state {observed.m_state}, expected {expected.state}")
    if observed.counter_values != expected.counters:
        violations.append(f"cell {z + 1}: counters {observed.counter_values}, expected {expected.counters}")
    return SimulationCheck(z, decoded, expected, observed, tuple(violations))


def verify_correct_simulation(
    compiled: CompiledMinskyCA,
    c: Configuration,
    z: int,
    horizon: Optional[int] = None,
) -> SimulationCheck:
    """Check that column z+1 carries one machine step applied to column z.

    Raises:
        PreconditionError: If cell z is not tagged, cell z+1 is not blank or
            the trace at z is not valid within the horizon
    """
    horizon = Config.DEFAULT_HORIZON if horizon is None else horizon
    history = orbit_window(compiled.ca, c, Window.interval(z, z + 1), horizon)
    return _check(compiled, history, z, 0, z)


def check_simulation_chain(
    compiled: CompiledMinskyCA,
    chis: Sequence[int],
    steps: Optional[int] = None,
    horizon: Optional[int] = None,
) -> SimulationChain:
    """Compare the columns of the canonical configuration with the interpreter.

    Column j must read as the j-th machine configuration. Each column is
    also checked against its left neighbor at the time it becomes tagged.
    Without ``steps`` the machine must halt within ``Config.DEFAULT_HORIZON``
    steps, and columns up to the halting one are read.
    """
    machine = compiled.machine
    start = MinskyConfig.initial(machine, chis)
    if steps is None:
        run = minsky_run(machine, start, Config.DEFAULT_HORIZON)
        if not isinstance(run, Halted):
            raise PreconditionError(f"{machine.name or 'machine'} does not halt within {Config.DEFAULT_HORIZON} steps; give a step count")
        steps = run.time
    path = trajectory(machine, start, steps)
    max_counter = max(max(cfg.counters) for cfg in path)
    width = max(chis) + 3
    horizon = default_horizon(compiled, steps + 1, max_counter, width) if horizon is None else horizon
    logger.info("=" * 80)
    logger.info(f"Checking {steps + 1} columns of {compiled.ca.name} over {horizon} steps")
    c = canonical_configuration(compiled, chis)
    lo = 0
    history = orbit_window(compiled.ca, c, Window.interval(lo, steps + 1), horizon)
    readings = _readings(compiled, history, lo, range(steps + 1))
    mismatches = []
    for j, expected in enumerate(path):
        reading = readings[j]
        if reading.m_state != expected.state or reading.counter_values != expected.counters:
            mismatches.append(
                f"column {j}: read ({reading.m_state}, {reading.counter_values}), "
                f"expected ({expected.state}, {expected.counters})"
            )
    checks = []
    for j in range(steps):
        if path[j].state == machine.halting:
            break
        tagged_at = [t for t in range(horizon + 1) if compiled.symbol_of(history[t, j - lo]).kind == TAGGED]
        if not tagged_at:
            mismatches.append(f"column {j} never holds a tagged control state")
            continue
        try:
            checks.append(_check(compiled, history, lo, tagged_at[0], j))
        except PreconditionError as e:
            mismatches.append(f"column {j}: {str(e)}")
    chain = SimulationChain(tuple(readings.values()), tuple(path), tuple(checks), tuple(mismatches), horizon)
    logger.info(f"Chain {'passed' if chain.passed else 'failed'}: {len(mismatches)} mismatches")
    logger.info("=" * 80)
    return chain


def halting_witness(compiled: CompiledMinskyCA, chis: Sequence[int], t_max: int) -> HaltingWitness:
    """First time the halting state reaches cell 0 of the canonical configuration."""
    c = canonical_configuration(compiled, chis)
    for t in range(t_max + 1):
        if c.value_at((0,)) == compiled.halt:
            return HaltsWithH(t)
        if t < t_max:
            c = step(compiled.ca, c)
    return NoHWithinBound(t_max)


def max_change_witness(
    compiled: CompiledMinskyCA,
    width: Optional[int] = None,
    t_max: Optional[int] = None,
    configuration: Optional[Configuration] = None,
) -> ChangeWitness:
    """Changes at cell 0 starting from ``i0`` on z <= 0 and blanks on z > 0.

    A machine halting on empty input yields K+5 changes, ending in the
    halting state; otherwise the count stays at K+4 or below.
    """
    c = configuration if configuration is not None else countdown_configuration(compiled, width)
    if t_max is None:
        t_max = Config.DEFAULT_HORIZON
        run = minsky_run(compiled.machine, MinskyConfig.initial(compiled.machine), Config.DEFAULT_HORIZON)
        if isinstance(run, Halted):
            path = trajectory(compiled.machine, MinskyConfig.initial(compiled.machine), run.time)
            bound = default_horizon(compiled, run.time + 1, max(max(cfg.counters) for cfg in path), width or 0)
            t_max = max(t_max, bound)
    history = orbit_window(compiled.ca, c, Window.interval(0, 0), t_max)[:, 0]
    sequence = [int(history[0])]
    for q in history[1:]:
        if q != sequence[-1]:
            sequence.append(int(q))
    names = tuple(symbol_name(compiled.symbol_of(q)) for q in sequence)
    logger.debug(f"Cell 0 of {compiled.ca.name}: {' -> '.join(names)}")
    return ChangeWitness(len(sequence) - 1, names)
