"""Deterministic k-counter Minsky machines."""
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional, Sequence, Union

from src.ca.errors import FormatError
from src.ca.formats import tokenize
from src.utils import get_logger

logger = get_logger(__name__)

Flags = tuple[int, ...]
Deltas = tuple[int, ...]


class MachineError(ValueError):
    """An ill-formed counter machine."""


@dataclass(frozen=True)
class MinskyMachine:
    """``tau`` maps (state, zero flags) to (next state, counter deltas).

    A flag is 1 when the counter is positive. Missing rules of the halting
    state default to (halting, 0...0); every other rule must be given.
    """

    states: tuple[str, ...]
    initial: str
    halting: str
    counters: int
    tau: Mapping[tuple[str, Flags], tuple[str, Deltas]] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        states = tuple(self.states)
        if len(set(states)) != len(states):
            raise MachineError(f"Duplicate machine states: {states}")
        for q in (self.initial, self.halting):
            if q not in states:
                raise MachineError(f"State {q!r} is not among {states}")
        if self.counters < 1:
            raise MachineError("A machine needs at least one counter")
        k = self.counters
        tau = {}
        for (q, flags), (target, deltas) in self.tau.items():
            flags, deltas = tuple(flags), tuple(deltas)
            if q not in states or target not in states:
                raise MachineError(f"Rule {q} {flags} -> {target} uses an unknown state")
            if len(flags) != k or any(f not in (0, 1) for f in flags):
                raise MachineError(f"Rule for {q} has flags {flags}, expected {k} values in {{0, 1}}")
            if len(deltas) != k or any(d not in (-1, 0, 1) for d in deltas):
                raise MachineError(f"Rule for {q} has deltas {deltas}, expected {k} values in {{-1, 0, 1}}")
            tau[(q, flags)] = (target, deltas)
        for flags in itertools.product((0, 1), repeat=k):
            halt = tau.setdefault((self.halting, flags), (self.halting, (0,) * k))
            if halt != (self.halting, (0,) * k):
                raise MachineError(f"The halting state must stay put, got {halt} on flags {flags}")
            for q in states:
                if (q, flags) not in tau:
                    raise MachineError(f"No rule for state {q} on flags {''.join(map(str, flags))}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "tau", MappingProxyType(tau))

    def transition(self, state: str, flags: Flags) -> tuple[str, Deltas]:
        return self.tau[(state, tuple(flags))]


@dataclass(frozen=True)
class MinskyConfig:
    state: str
    counters: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.counters):
            raise MachineError(f"Negative counter in {self.counters}")
        object.__setattr__(self, "counters", tuple(self.counters))

    @classmethod
    def initial(cls, machine: MinskyMachine, counters: Optional[Sequence[int]] = None) -> "MinskyConfig":
        counters = tuple(counters) if counters is not None else (0,) * machine.counters
        if len(counters) != machine.counters:
            raise MachineError(f"Expected {machine.counters} counter values, got {len(counters)}")
        return cls(machine.initial, counters)


@dataclass(frozen=True)
class Halted:
    time: int
    config: MinskyConfig


@dataclass(frozen=True)
class Running:
    config: MinskyConfig


RunResult = Union[Halted, Running]


def minsky_step(machine: MinskyMachine, config: MinskyConfig) -> MinskyConfig:
    flags = tuple(min(1, x) for x in config.counters)
    target, deltas = machine.transition(config.state, flags)
    return MinskyConfig(target, tuple(max(0, x + d) for x, d in zip(config.counters, deltas)))


def minsky_run(machine: MinskyMachine, config: MinskyConfig, t_max: int) -> RunResult:
    """Run until the halting state (least time) or ``t_max`` steps."""
    for t in range(t_max + 1):
        if config.state == machine.halting:
            return Halted(t, config)
        if t < t_max:
            config = minsky_step(machine, config)
    return Running(config)


def trajectory(machine: MinskyMachine, config: MinskyConfig, steps: int) -> list[MinskyConfig]:
    path = [config]
    for _ in range(steps):
        path.append(minsky_step(machine, path[-1]))
    return path


# Built-in machines

def _build(name: str, states, initial, halting, counters, rules) -> MinskyMachine:
    return MinskyMachine(tuple(states), initial, halting, counters, rules, name)


def bounce_machine() -> MinskyMachine:
    """q0 -(+1)-> q1 -(-1)-> q2, which decrements until zero then halts; on 0 it halts in 3 steps."""
    rules = {}
    for f in (0, 1):
        rules[("q0", (f,))] = ("q1", (1,))
        rules[("q1", (f,))] = ("q2", (-1,))
    rules[("q2", (1,))] = ("q2", (-1,))
    rules[("q2", (0,))] = ("h", (0,))
    return _build("bounce", ["q0", "q1", "q2", "h"], "q0", "h", 1, rules)


def loop_machine() -> MinskyMachine:
    rules = {("q0", (f,)): ("q0", (0,)) for f in (0, 1)}
    return _build("loop", ["q0", "h"], "q0", "h", 1, rules)


def incrementing_machine() -> MinskyMachine:
    """Increments its counter forever."""
    rules = {("q0", (f,)): ("q0", (1,)) for f in (0, 1)}
    return _build("incrementing", ["q0", "h"], "q0", "h", 1, rules)


def counting_machine(target: int) -> MinskyMachine:
    """Counts up to ``target`` and halts after ``target + 1`` steps."""
    states = [f"s{j}" for j in range(target + 1)] + ["h"]
    rules = {}
    for j in range(target + 1):
        for f in (0, 1):
            rules[(f"s{j}", (f,))] = (f"s{j + 1}", (1,)) if j < target else ("h", (0,))
    return _build(f"counting{target}", states, "s0", "h", 1, rules)


def countdown_machine() -> MinskyMachine:
    """Decrements to zero, then halts."""
    rules = {("q0", (1,)): ("q0", (-1,)), ("q0", (0,)): ("h", (0,))}
    return _build("countdown", ["q0", "h"], "q0", "h", 1, rules)


def transfer_machine() -> MinskyMachine:
    """Two counters: moves counter 1 onto counter 2, then halts."""
    rules = {}
    for f2 in (0, 1):
        rules[("q0", (1, f2))] = ("q0", (-1, 1))
        rules[("q0", (0, f2))] = ("h", (0, 0))
    return _build("transfer", ["q0", "h"], "q0", "h", 2, rules)


BUILTIN_MACHINES = {
    "bounce": bounce_machine,
    "loop": loop_machine,
    "incrementing": incrementing_machine,
    "countdown": countdown_machine,
    "transfer": transfer_machine,
}


def builtin_machine(name: str) -> MinskyMachine:
    """A built-in machine by name; ``countingN`` counts up to N."""
    if name.startswith("counting") and name[len("counting"):].isdigit():
        return counting_machine(int(name[len("counting"):]))
    return BUILTIN_MACHINES[name]()


# Machine files

def parse_machine(text: str) -> MinskyMachine:
    """Parse ``states``, ``initial``, ``halting``, ``counters`` and ``rule`` lines."""
    states = None
    initial = None
    halting = None
    counters = None
    rules = {}
    name = ""
    for line, tokens in tokenize(text):
        directive, args = tokens[0], tokens[1:]
        if directive == "name":
            name = " ".join(args)
        elif directive == "states":
            states = args
        elif directive == "initial" and len(args) == 1:
            initial = args[0]
        elif directive == "halting" and len(args) == 1:
            halting = args[0]
        elif directive == "counters" and len(args) == 1 and args[0].isdigit():
            counters = int(args[0])
        elif directive == "rule" and len(args) == 5 and args[2] == "->":
            source, flags, _, target, deltas = args
            if counters is None:
                raise FormatError("rule before counters", line)
            if len(flags) != counters or any(f not in "01" for f in flags):
                raise FormatError(f"Zero flags {flags!r} must be {counters} digits in 01", line)
            try:
                delta_values = tuple(int(d) for d in deltas.split(","))
            except ValueError:
                raise FormatError(f"Invalid deltas {deltas!r}", line) from None
            key = (source, tuple(int(f) for f in flags))
            if key in rules:
                raise FormatError(f"Duplicate rule for {source} {flags}", line)
            rules[key] = (target, delta_values)
        else:
            raise FormatError(f"Invalid line {' '.join(tokens)!r}", line)
    if None in (states, initial, halting, counters):
        raise FormatError("Machine file needs states, initial, halting and counters lines")
    try:
        return MinskyMachine(tuple(states), initial, halting, counters, rules, name)
    except MachineError as e:
        raise FormatError(str(e)) from None


def format_machine(machine: MinskyMachine) -> str:
    lines = []
    if machine.name:
        lines.append(f"name {machine.name}\n")
    lines += [
        f"states {' '.join(machine.states)}\n",
        f"initial {machine.initial}\n",
        f"halting {machine.halting}\n",
        f"counters {machine.counters}\n",
    ]
    for (q, flags), (target, deltas) in machine.tau.items():
        if q == machine.halting:
            continue
        lines.append(f"rule {q} {''.join(map(str, flags))} -> {target} {','.join(map(str, deltas))}\n")
    return "".join(lines)


def load_machine(source: Union[str, Path]) -> MinskyMachine:
    """A machine file path, or the name of a built-in machine."""
    path = Path(source)
    if not path.exists():
        try:
            return builtin_machine(str(source))
        except KeyError:
            raise FormatError(f"{source} is neither a machine file nor a built-in machine") from None
    try:
        return parse_machine(path.read_text())
    except FormatError as e:
        raise FormatError(e.message, e.line, path) from None
