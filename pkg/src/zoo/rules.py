"""Named rule builders: growth models, order-freezing wrappers and rule transformers."""
from typing import Optional, Sequence

import numpy as np

from src.ca import Alphabet, CellularAutomaton, CAError, Configuration, Neighborhood, UniformBackground
from src.ca.automaton import tabulate

BINARY = ("0", "1")
STAR = "*"


def _center(neighborhood: Neighborhood, contexts: list[np.ndarray]) -> np.ndarray:
    index = neighborhood.center_index
    if index is None:
        raise CAError(f"Neighborhood [{neighborhood}] does not contain the origin")
    return contexts[index]


def _count(contexts: Sequence[np.ndarray], state: int, skip: Optional[int] = None) -> np.ndarray:
    return sum((ctx == state).astype(np.int64) for i, ctx in enumerate(contexts) if i != skip)


# Elementary rules

def identity(dimension: int = 1, states: Sequence[str] = BINARY) -> CellularAutomaton:
    neighborhood = Neighborhood(((0,) * dimension,))
    return tabulate(Alphabet(tuple(states)), neighborhood, lambda ctx: ctx[0], "identity")


def constant(state: str = "0", dimension: int = 1, states: Sequence[str] = BINARY) -> CellularAutomaton:
    alphabet = Alphabet(tuple(states))
    q = alphabet.id_of(state)
    neighborhood = Neighborhood(((0,) * dimension,))
    return tabulate(alphabet, neighborhood, lambda ctx: np.full_like(ctx[0], q), f"constant-{state}")


def shift(states: Sequence[str] = BINARY) -> CellularAutomaton:
    """f(a, b) = a over V = {-1, 0}: content moves one cell to the right per step."""
    return tabulate(Alphabet(tuple(states)), Neighborhood.interval(-1, 0), lambda ctx: ctx[0], "shift")


def max_rule(states: Sequence[str] = BINARY, two_way: bool = False) -> CellularAutomaton:
    """Maximum state id over {-1, 0} (or {-1, 0, 1} when two-way)."""
    neighborhood = Neighborhood.interval(-1, 1 if two_way else 0)
    return tabulate(
        Alphabet(tuple(states)),
        neighborhood,
        lambda ctx: np.maximum.reduce(np.broadcast_arrays(*ctx)),
        "max2" if two_way else "max",
    )


def nonfreezing_example() -> CellularAutomaton:
    """f(a, b) = 1 if b = 0 else 2 over {0, 1, 2}: nilpotent, yet 1 -> 2 and 2 -> 1 both occur."""
    return tabulate(
        Alphabet(("0", "1", "2")),
        Neighborhood.interval(0, 1),
        lambda ctx: np.where(ctx[1] == 0, 1, 2),
        "nonfreezing",
    )


# Growth models

def ulam(dimension: int = 2) -> CellularAutomaton:
    """0 becomes 1 when exactly one 1 occurs in the von Neumann neighborhood; 1 stays."""
    neighborhood = Neighborhood.von_neumann(dimension, 1, include_center=True)

    def rule(ctx):
        center = _center(neighborhood, ctx)
        return np.where((center == 1) | (_count(ctx, 1) == 1), 1, 0)

    return tabulate(Alphabet(BINARY), neighborhood, rule, "ulam" if dimension == 2 else f"ulam{dimension}d")


def ulam1d() -> CellularAutomaton:
    return ulam(1)


def threshold_growth(
    dimension: int = 2,
    threshold: int = 2,
    neighborhood: Optional[Neighborhood] = None,
) -> CellularAutomaton:
    """0 becomes 1 once at least ``threshold`` neighbors are 1; 1 stays forever."""
    if neighborhood is None:
        neighborhood = Neighborhood.von_neumann(dimension, 1, include_center=True)
    if neighborhood.center_index is None:
        neighborhood = Neighborhood((neighborhood.origin,)).union(neighborhood)
    center_index = neighborhood.center_index

    def rule(ctx):
        center = ctx[center_index]
        return np.where((center == 1) | (_count(ctx, 1, skip=center_index) >= threshold), 1, 0)

    return tabulate(Alphabet(BINARY), neighborhood, rule, f"threshold{threshold}")


def game_of_life() -> CellularAutomaton:
    """B3/S23 on the Moore neighborhood."""
    neighborhood = Neighborhood.ball(2, 1)
    center_index = neighborhood.center_index

    def rule(ctx):
        alive = ctx[center_index] == 1
        neighbors = _count(ctx, 1, skip=center_index)
        return np.where((neighbors == 3) | (alive & (neighbors == 2)), 1, 0)

    return tabulate(Alphabet(BINARY), neighborhood, rule, "life")


def freeze_under_order(inner: CellularAutomaton, order: Sequence[str]) -> CellularAutomaton:
    """F_<=(c)_z = min(c_z, F(c)_z) for the total order listed from minimum to maximum."""
    if sorted(order) != sorted(inner.alphabet.symbols):
        raise CAError(f"Order {list(order)} is not a permutation of {list(inner.alphabet.symbols)}")
    neighborhood = inner.neighborhood
    if neighborhood.center_index is None:
        neighborhood = neighborhood.union(Neighborhood((neighborhood.origin,)))
        inner = inner.extended(neighborhood)
    rank = np.empty(inner.size, dtype=np.int64)
    rank[inner.alphabet.ids(order)] = np.arange(inner.size)
    center_index = neighborhood.center_index

    def rule(ctx):
        out = inner.table[tuple(ctx)]
        center = ctx[center_index]
        return np.where(rank[center] <= rank[out], center, out)

    return tabulate(inner.alphabet, neighborhood, rule, f"frozen-{inner.name or 'rule'}")


def life_without_death() -> CellularAutomaton:
    return freeze_under_order(game_of_life(), ["1", "0"]).renamed("life-without-death")


def sir(dimension: int = 2, neighborhood: Optional[Neighborhood] = None, threshold: int = 1) -> CellularAutomaton:
    """Deterministic SIR: S becomes I with at least ``threshold`` infected neighbors, I becomes R, R stays."""
    if neighborhood is None:
        neighborhood = Neighborhood.von_neumann(dimension, 1, include_center=True)
    if neighborhood.center_index is None:
        neighborhood = Neighborhood((neighborhood.origin,)).union(neighborhood)
    alphabet = Alphabet(("S", "I", "R"))
    s, i, r = 0, 1, 2
    center_index = neighborhood.center_index

    def rule(ctx):
        center = ctx[center_index]
        infected = _count(ctx, i, skip=center_index) >= threshold
        return np.where(center == s, np.where(infected, i, s), r)

    return tabulate(alphabet, neighborhood, rule, "sir")


def vertical_min() -> CellularAutomaton:
    """F(c)_z = min(c_z, c_{z+(0,1)}) over {0, 1}."""
    return tabulate(
        Alphabet(BINARY),
        Neighborhood(((0, 0), (0, 1))),
        lambda ctx: np.minimum(ctx[0], ctx[1]),
        "vertical-min",
    )


def halting_columns(machines: Sequence, height: int, max_steps: Optional[int] = None) -> Configuration:
    """Vertical-min configuration whose row-0 limit marks halting machines.

    Column i holds 0 at heights ``j`` with ``T_i < j <= height`` where ``T_i``
    is the halting time of machine i on empty input, and 1 everywhere else.
    """
    from src.minsky.machine import Halted, MinskyConfig, minsky_run

    cells = {}
    for i, machine in enumerate(machines):
        result = minsky_run(machine, MinskyConfig.initial(machine), height if max_steps is None else max_steps)
        if isinstance(result, Halted):
            for j in range(result.time + 1, height + 1):
                cells[(i, j)] = 0
    return Configuration(2, UniformBackground(1), cells)


# Transformers

def line_lift(inner: CellularAutomaton) -> CellularAutomaton:
    """2D freezing CA computing the orbit of a 1D rule row by row.

    Adds the state ``*``; a ``*`` cell whose row below is fully computed takes
    the inner image of that row, every other cell keeps its state.
    """
    if inner.dimension != 1:
        raise CAError("line_lift needs a 1D rule")
    if STAR in inner.alphabet:
        raise CAError(f"State {STAR!r} is reserved by line_lift")
    alphabet = Alphabet(inner.alphabet.symbols + (STAR,))
    star = inner.size
    below = [(v[0], -1) for v in inner.neighborhood.offsets]
    neighborhood = Neighborhood(((0, 0),) + tuple(v for v in below if v != (0, 0)))
    positions = [neighborhood.index_of(v) for v in below]

    def rule(ctx):
        center = ctx[0]
        row = [ctx[p] for p in positions]
        ready = np.logical_and.reduce(np.broadcast_arrays(*[v != star for v in row]))
        image = inner.table[tuple(np.where(v == star, 0, v) for v in row)]
        return np.where(center != star, center, np.where(ready, image, star))

    return tabulate(alphabet, neighborhood, rule, f"lift-{inner.name or 'rule'}")


def product(first: CellularAutomaton, second: CellularAutomaton) -> CellularAutomaton:
    """Componentwise product over Q1 x Q2 on the union of both neighborhoods; states are named ``p|q``."""
    if first.dimension != second.dimension:
        raise CAError("Product of automata of different dimensions")
    neighborhood = first.neighborhood.union(second.neighborhood)
    a = first.extended(neighborhood)
    b = second.extended(neighborhood)
    alphabet = Alphabet(tuple(f"{p}|{q}" for p in first.alphabet for q in second.alphabet))
    nb = second.size

    def rule(ctx):
        return a.table[tuple(c // nb for c in ctx)] * nb + b.table[tuple(c % nb for c in ctx)]

    return tabulate(alphabet, neighborhood, rule, f"{first.name or 'rule'}x{second.name or 'rule'}")
