"""Spreading states and the bit-layer product used to reduce nilpotency questions."""
import numpy as np

from src.ca import Alphabet, CellularAutomaton, Neighborhood
from src.ca.automaton import tabulate


class NotSpreadingError(ValueError):
    """The given state does not spread under the rule."""


def is_spreading(ca: CellularAutomaton, state: int) -> bool:
    """Every context containing ``state`` maps to ``state``."""
    for index in range(len(ca.neighborhood)):
        if np.any(np.take(ca.table, state, axis=index) != state):
            return False
    return True


def check_spreading(ca: CellularAutomaton, state: int) -> None:
    if not is_spreading(ca, state):
        raise NotSpreadingError(f"State {ca.alphabet.name_of(state)!r} is not spreading in {ca.name or 'automaton'}")


def lift_spreading_product(ca: CellularAutomaton, state: int) -> CellularAutomaton:
    """Product with a blinking bit.

    Over Q x {0, 1} (named ``q/b``): a neighborhood containing the spreading
    state gives (s, 0); otherwise the first layer evolves by the rule and the
    center bit flips.

    Raises:
        NotSpreadingError: If ``state`` is not spreading
    """
    check_spreading(ca, state)
    neighborhood = ca.neighborhood
    if neighborhood.center_index is None:
        neighborhood = neighborhood.union(Neighborhood((neighborhood.origin,)))
    inner = ca.extended(neighborhood)
    alphabet = Alphabet(tuple(f"{q}/{bit}" for q in ca.alphabet for bit in (0, 1)))
    center = neighborhood.center_index

    def rule(ctx):
        layer = [c // 2 for c in ctx]
        has_state = np.logical_or.reduce(np.broadcast_arrays(*[q == state for q in layer]))
        image = inner.table[tuple(layer)] * 2 + (1 - ctx[center] % 2)
        return np.where(has_state, state * 2, image)

    return tabulate(alphabet, neighborhood, rule, f"blink-{ca.name or 'rule'}")
