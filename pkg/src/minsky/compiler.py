"""Compile a counter machine into a freezing radius-1 automaton F_M.

States:

* blank and wall, named by Config.BLANK_STATE and Config.WALL_STATE (``b`` and ``w``);
* counter states ``c(m1,d1;...;mk,dk)``, one (mark, delta) pair per counter,
  where the mark is ``1`` or one of ``#-1``, ``#0``, ``#1``;
* tagged control states ``q[d1,...,dk]`` and bare control states ``q``;
* countdown states ``i0`` .. ``iK`` with ``K = 3k + 3``.

A column whose control is tagged holds the machine state of one step; the
counter states below it spell each counter value in unary (the number of
steps spent with mark ``1``) and close with ``#-1 #0 #1``.
"""
import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import networkx as nx
import numpy as np

from src.ca import Alphabet, CAError, CellularAutomaton, Configuration, Neighborhood, Pattern, SplitBackground
from src.classify.changes import Freezing, NotFreezing, check_freezing
from src.config import Config
from src.minsky.machine import MachineError, MinskyMachine
from src.utils import get_logger

logger = get_logger(__name__)

BLANK = "blank"
WALL = "wall"
COUNTER = "counter"
TAGGED = "tagged"
CONTROL = "control"
COUNTDOWN = "countdown"

# Counter mark "1"; the marks #-1, #0, #1 are the integers -1, 0, 1.
ONE = 2
MARKS = (ONE, -1, 0, 1)
DELTAS = (-1, 0, 1)

_COUNTDOWN_NAME = re.compile(r"^i\d+$")
_FORBIDDEN_CHARS = set("[](),;# \t")


class Symbol(NamedTuple):
    kind: str
    cells: tuple[tuple[int, int], ...] = ()
    state: str = ""
    deltas: tuple[int, ...] = ()
    index: int = 0


BLANK_SYMBOL = Symbol(BLANK)
WALL_SYMBOL = Symbol(WALL)


def counter(cells) -> Symbol:
    return Symbol(COUNTER, cells=tuple(cells))


def tagged(state: str, deltas) -> Symbol:
    return Symbol(TAGGED, state=state, deltas=tuple(deltas))


def control(state: str) -> Symbol:
    return Symbol(CONTROL, state=state)


def countdown(index: int) -> Symbol:
    return Symbol(COUNTDOWN, index=index)


def _mark_name(mark: int) -> str:
    return "1" if mark == ONE else f"#{mark}"


def symbol_name(symbol: Symbol) -> str:
    if symbol.kind == BLANK:
        return Config.BLANK_STATE
    if symbol.kind == WALL:
        return Config.WALL_STATE
    if symbol.kind == COUNTER:
        return "c(" + ";".join(f"{_mark_name(m)},{d}" for m, d in symbol.cells) + ")"
    if symbol.kind == TAGGED:
        return f"{symbol.state}[{','.join(map(str, symbol.deltas))}]"
    if symbol.kind == CONTROL:
        return symbol.state
    return f"i{symbol.index}"


def counter_update(cell: tuple[int, int], left_mark: int) -> tuple[int, int]:
    """Per-counter update of a counter column from the mark on its left."""
    mark, delta = cell
    if mark == ONE:
        return (-1, delta) if left_mark == delta else (ONE, delta)
    return min(1, mark + 1), delta


def counter_copy(left_mark: int, delta: int) -> tuple[int, int]:
    """First counter cell under a tagged control, read off the left mark."""
    if (left_mark == -1 and delta == -1) or (left_mark == 0 and delta < 1):
        return -1, delta
    return ONE, delta


def local_rule(machine: MinskyMachine, x: Symbol, y: Symbol, z: Symbol) -> Symbol:
    """f_M on (left, center, right): the first matching case wins."""
    k = machine.counters
    K = 3 * k + 3
    halt = control(machine.halting)
    if y == halt or (z == halt and y.kind == COUNTER and all(m == 1 for m, _ in y.cells)):
        return halt
    if y.kind == BLANK:
        return control(x.state) if x.kind == TAGGED else BLANK_SYMBOL
    if x.kind == TAGGED:
        return WALL_SYMBOL
    if y.kind == COUNTER and x.kind == WALL and all(m != ONE for m, _ in y.cells):
        return counter((min(1, m + 1), d) for m, d in y.cells)
    if y.kind == COUNTER and x.kind == COUNTER:
        return counter(counter_update(cell, left) for cell, (left, _) in zip(y.cells, x.cells))
    if y.kind == CONTROL and x.kind == COUNTER:
        target, deltas = machine.transition(y.state, tuple(int(m == ONE) for m, _ in x.cells))
        return tagged(target, deltas)
    if y.kind == TAGGED and x.kind == COUNTER:
        return counter(counter_copy(left, d) for (left, _), d in zip(x.cells, y.deltas))
    if y.kind == COUNTDOWN and x == y and y.index < K:
        return countdown(y.index + 1)
    if y == countdown(K) and z.kind == BLANK:
        return tagged(machine.initial, (0,) * k)
    if x.kind == WALL and y.kind == TAGGED:
        return counter(((-1, 0),) * k)
    return WALL_SYMBOL


def machine_symbols(machine: MinskyMachine) -> tuple[Symbol, ...]:
    """All states of F_M, in table order."""
    k = machine.counters
    symbols = [BLANK_SYMBOL, WALL_SYMBOL]
    symbols += [counter(cells) for cells in itertools.product(itertools.product(MARKS, DELTAS), repeat=k)]
    symbols += [tagged(q, deltas) for q in machine.states for deltas in itertools.product(DELTAS, repeat=k)]
    symbols += [control(q) for q in machine.states]
    symbols += [countdown(n) for n in range(3 * k + 4)]
    return tuple(symbols)


def _check_state_names(machine: MinskyMachine) -> None:
    for q in machine.states:
        reserved = q in (Config.BLANK_STATE, Config.WALL_STATE) or _COUNTDOWN_NAME.match(q)
        if reserved or _FORBIDDEN_CHARS & set(q) or q.startswith("c("):
            raise MachineError(f"Machine state name {q!r} clashes with the compiled alphabet")


@dataclass(frozen=True, eq=False)
class CompiledMinskyCA:
    ca: CellularAutomaton
    machine: MinskyMachine
    symbols: tuple[Symbol, ...] = field(repr=False)
    order: Freezing = field(repr=False)

    @property
    def counters(self) -> int:
        return self.machine.counters

    @property
    def K(self) -> int:
        return 3 * self.machine.counters + 3

    @cached_property
    def _index(self) -> dict[Symbol, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def id_of(self, symbol: Symbol) -> int:
        return self._index[symbol]

    def symbol_of(self, state: int) -> Symbol:
        return self.symbols[int(state)]

    @property
    def blank(self) -> int:
        return self.id_of(BLANK_SYMBOL)

    @property
    def wall(self) -> int:
        return self.id_of(WALL_SYMBOL)

    @property
    def halt(self) -> int:
        return self.id_of(control(self.machine.halting))

    def local_names(self, x: str, y: str, z: str) -> str:
        """f_M evaluated directly from the case list, on state names."""
        ids = self.ca.alphabet.ids([x, y, z])
        out = local_rule(self.machine, *(self.symbols[i] for i in ids))
        return symbol_name(out)

    @cached_property
    def reference_order(self) -> frozenset[tuple[int, int]]:
        """Pairs (a, b) with a below b in the construction's preorder on states.

        Counter states compare componentwise on marks (#1 < #0 < #-1 < 1)
        with equal deltas.
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.symbols)))
        by_kind: dict[str, list[int]] = {}
        for i, s in enumerate(self.symbols):
            by_kind.setdefault(s.kind, []).append(i)
        wall, halt = self.wall, self.halt
        graph.add_edges_from((wall, q) for q in range(len(self.symbols)))
        graph.add_edges_from((halt, q) for q in by_kind[COUNTER])
        graph.add_edges_from(itertools.product(by_kind[COUNTER], by_kind[TAGGED]))
        graph.add_edges_from(itertools.product(by_kind[TAGGED], by_kind[CONTROL]))
        graph.add_edges_from((q, self.blank) for q in by_kind[CONTROL])
        for a in by_kind[COUNTER]:
            cells_a = self.symbols[a].cells
            for mark_index, (mark, delta) in enumerate(cells_a):
                if mark == 1:
                    continue
                below = MARKS[MARKS.index(mark) + 1]
                cells = cells_a[:mark_index] + ((below, delta),) + cells_a[mark_index + 1:]
                graph.add_edge(self.id_of(counter(cells)), a)
        k, K = self.counters, self.K
        top = self.id_of(countdown(K))
        graph.add_edge(self.id_of(counter(((-1, 0),) * k)), top)
        graph.add_edge(self.id_of(tagged(self.machine.initial, (0,) * k)), top)
        for n in range(K):
            graph.add_edge(self.id_of(countdown(n + 1)), self.id_of(countdown(n)))
        closure = nx.transitive_closure(graph, reflexive=True)
        return frozenset(closure.edges)


def _table(machine: MinskyMachine, symbols: Sequence[Symbol]) -> np.ndarray:
    """Full table over Q^3.

    Every case but the second half of case (1) and case (10) ignores the
    right neighbor; those two are applied on top of a (left, center) table.
    """
    index = {s: i for i, s in enumerate(symbols)}
    n = len(symbols)
    pair = np.empty((n, n), dtype=np.int32)
    for x, y in itertools.product(range(n), repeat=2):
        pair[x, y] = index[local_rule(machine, symbols[x], symbols[y], WALL_SYMBOL)]
    table = np.repeat(pair[:, :, None], n, axis=2)
    k = machine.counters
    halt = index[control(machine.halting)]
    closed = [i for i, s in enumerate(symbols) if s.kind == COUNTER and all(m == 1 for m, _ in s.cells)]
    table[:, closed, halt] = halt
    untagged = [i for i, s in enumerate(symbols) if s.kind != TAGGED]
    top = index[countdown(3 * k + 3)]
    table[untagged, top, index[BLANK_SYMBOL]] = index[tagged(machine.initial, (0,) * k)]
    return table


def compile_minsky(machine: MinskyMachine) -> CompiledMinskyCA:
    """Build F_M and re-verify that it is freezing.

    Raises:
        MachineError: If a machine state name clashes with the compiled alphabet
        CAError: If the compiled table is not freezing
    """
    logger.info("=" * 80)
    logger.info(f"Compiling machine {machine.name or '<unnamed>'}: {len(machine.states)} states, {machine.counters} counters")
    _check_state_names(machine)
    symbols = machine_symbols(machine)
    alphabet = Alphabet(tuple(symbol_name(s) for s in symbols))
    try:
        table = _table(machine, symbols)
        ca = CellularAutomaton(alphabet, Neighborhood.interval(-1, 1), table, f"F[{machine.name or 'machine'}]")
    except Exception as e:
        logger.error(f"Failed to compile machine {machine.name}: {str(e)}")
        raise
    order = check_freezing(ca)
    if isinstance(order, NotFreezing):
        raise CAError(f"Compiled rule is not freezing: cycle {alphabet.names(order.cycle)}")
    logger.info(f"Compiled {ca.name}: {alphabet.size} states, K = {3 * machine.counters + 3}")
    logger.info("=" * 80)
    return CompiledMinskyCA(ca, machine, symbols, order)


def encode_input(compiled: CompiledMinskyCA, chis: Sequence[int]) -> Pattern:
    """Pattern on B(l + 2), l = max(chis), starting the machine on counters ``chis``.

    Cell -l-2 is the wall, cells -l-1 .. -1 hold the counters in unary, cell 0
    the tagged initial state with deltas -1 and the right half is blank.
    """
    chis = tuple(int(x) for x in chis)
    if len(chis) != compiled.counters:
        raise CAError(f"Expected {compiled.counters} counter values, got {len(chis)}")
    if any(x < 0 for x in chis):
        raise CAError(f"Counter values must be non-negative, got {chis}")
    l = max(chis)
    values = [compiled.wall]
    for j in range(-l - 1, 0):
        cells = [(ONE, -1) if -j - 1 < x else (-1, 0) for x in chis]
        values.append(compiled.id_of(counter(cells)))
    values.append(compiled.id_of(tagged(compiled.machine.initial, (-1,) * compiled.counters)))
    values += [compiled.blank] * (l + 2)
    return Pattern.from_values(1, l + 2, values)


def canonical_configuration(compiled: CompiledMinskyCA, chis: Sequence[int]) -> Configuration:
    """The encoded input extended by blanks to the right and walls to the left."""
    pattern = encode_input(compiled, chis)
    background = SplitBackground(-pattern.radius + 1, compiled.wall, compiled.blank)
    return Configuration.from_cells(1, background, pattern.cells())


def countdown_configuration(compiled: CompiledMinskyCA, width: Optional[int] = None) -> Configuration:
    """``i0`` on cells z <= 0 (only on -width < z <= 0 when a width is given), blank elsewhere."""
    first = compiled.id_of(countdown(0))
    if width is None:
        return Configuration(1, SplitBackground(1, first, compiled.blank))
    if width < 1:
        raise CAError(f"Width must be positive, got {width}")
    return Configuration.from_cells(1, compiled.blank, {(z,): first for z in range(-width + 1, 1)})
