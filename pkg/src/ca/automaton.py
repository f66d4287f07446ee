"""Cellular automata given by a neighborhood and a dense transition table."""
import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from src.ca.alphabet import Alphabet, Neighborhood
from src.ca.errors import CAError, DimensionMismatchError, UnknownStateError
from src.utils import get_logger

logger = get_logger(__name__)

STATE_DTYPE = np.int32


@dataclass(frozen=True, eq=False)
class CellularAutomaton:
    """A d-dimensional CA.

    ``table[s_0, ..., s_{m-1}]`` is the new state of a cell whose neighbor at
    ``neighborhood.offsets[i]`` is in state ``s_i``.
    """

    alphabet: Alphabet
    neighborhood: Neighborhood
    table: np.ndarray = field(repr=False)
    name: str = ""

    def __post_init__(self):
        n = self.alphabet.size
        m = len(self.neighborhood)
        table = np.array(self.table, dtype=STATE_DTYPE)
        if table.shape != (n,) * m:
            raise CAError(f"Transition table has shape {table.shape}, expected {(n,) * m}")
        if table.min() < 0 or table.max() >= n:
            raise UnknownStateError("Transition table produces a state outside the alphabet")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def dimension(self) -> int:
        return self.neighborhood.dimension

    @property
    def radius(self) -> int:
        return self.neighborhood.radius

    @property
    def size(self) -> int:
        return self.alphabet.size

    def __repr__(self) -> str:
        return (
            f"CellularAutomaton(name={self.name!r}, states={self.size}, "
            f"dimension={self.dimension}, neighborhood=[{self.neighborhood}])"
        )

    @classmethod
    def from_function(
        cls,
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        rule: Callable[[tuple[str, ...]], str],
        name: str = "",
    ) -> "CellularAutomaton":
        """Tabulate a local rule given on state names."""
        index = {s: i for i, s in enumerate(alphabet.symbols)}
        outputs = []
        for context in itertools.product(alphabet.symbols, repeat=len(neighborhood)):
            out = rule(context)
            if out not in index:
                raise UnknownStateError(f"Rule maps {context} to unknown state {out!r}")
            outputs.append(index[out])
        table = np.array(outputs, dtype=STATE_DTYPE).reshape((alphabet.size,) * len(neighborhood))
        return cls(alphabet, neighborhood, table, name)

    @classmethod
    def from_ids(
        cls,
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        rule: Callable[[tuple[int, ...]], int],
        name: str = "",
    ) -> "CellularAutomaton":
        """Tabulate a local rule given on state ids."""
        outputs = [rule(context) for context in itertools.product(range(alphabet.size), repeat=len(neighborhood))]
        table = np.array(outputs, dtype=STATE_DTYPE).reshape((alphabet.size,) * len(neighborhood))
        return cls(alphabet, neighborhood, table, name)

    def renamed(self, name: str) -> "CellularAutomaton":
        return replace(self, name=name)

    def local(self, states) -> int:
        """Image of one neighborhood assignment, given as ids in offset order."""
        return int(self.table[tuple(int(s) for s in states)])

    def local_names(self, names) -> str:
        return self.alphabet.name_of(self.local(self.alphabet.ids(names)))

    def uniform_image(self, state: int) -> int:
        return int(self.table[(state,) * len(self.neighborhood)])

    def apply(self, grid: np.ndarray) -> np.ndarray:
        """Apply the local rule to every cell of ``grid`` at distance >= radius from its border.

        Args:
            grid: Dense array of state ids, padded by the radius on every side

        Returns:
            Array of new states, ``radius`` smaller on each side
        """
        grid = np.asarray(grid)
        if grid.ndim != self.dimension:
            raise DimensionMismatchError(f"Grid of dimension {grid.ndim} for a {self.dimension}D automaton")
        r = self.radius
        out_shape = tuple(s - 2 * r for s in grid.shape)
        if any(s < 0 for s in out_shape):
            raise CAError(f"Grid of shape {grid.shape} is smaller than the neighborhood")
        lookups = tuple(
            grid[tuple(slice(r + v, r + v + size) for v, size in zip(offset, out_shape))]
            for offset in self.neighborhood.offsets
        )
        return self.table[lookups]

    def apply_partial(self, grid: np.ndarray) -> np.ndarray:
        """Like :meth:`apply`, where -1 marks unknown cells and poisons every cell that reads one."""
        grid = np.asarray(grid)
        r = self.radius
        out_shape = tuple(s - 2 * r for s in grid.shape)
        lookups = [
            grid[tuple(slice(r + v, r + v + size) for v, size in zip(offset, out_shape))]
            for offset in self.neighborhood.offsets
        ]
        unknown = np.zeros(out_shape, dtype=bool)
        for values in lookups:
            unknown |= values < 0
        result = self.table[tuple(np.where(values < 0, 0, values) for values in lookups)]
        result = result.astype(STATE_DTYPE)
        result[unknown] = -1
        return result

    def extended(self, neighborhood: Neighborhood) -> "CellularAutomaton":
        """The same rule written over a larger neighborhood."""
        if not neighborhood.contains(self.neighborhood):
            raise CAError(f"Neighborhood [{neighborhood}] does not contain [{self.neighborhood}]")
        n = self.size
        m = len(neighborhood)
        axes = np.indices((n,) * m, sparse=True)
        positions = [neighborhood.index_of(v) for v in self.neighborhood.offsets]
        table = self.table[tuple(axes[p] for p in positions)]
        table = np.broadcast_to(table, (n,) * m)
        return CellularAutomaton(self.alphabet, neighborhood, table, self.name)

    def mirrored(self) -> "CellularAutomaton":
        """The rule read right to left (negated offsets, same table)."""
        return CellularAutomaton(self.alphabet, self.neighborhood.mirrored(), self.table, self.name)

    @cached_property
    def stable_states(self) -> frozenset[int]:
        """States that no neighborhood context can change."""
        center = self.neighborhood.center_index
        stable = set()
        for q in range(self.size):
            if center is None:
                entries = self.table
            else:
                entries = np.take(self.table, q, axis=center)
            if np.all(entries == q):
                stable.add(q)
        return frozenset(stable)

    def same_rule(self, other: "CellularAutomaton") -> bool:
        return (
            self.alphabet == other.alphabet
            and self.neighborhood == other.neighborhood
            and np.array_equal(self.table, other.table)
        )


def check_dimension(ca: CellularAutomaton, dimension: int) -> None:
    if ca.dimension != dimension:
        raise DimensionMismatchError(f"{ca.name or 'automaton'} is {ca.dimension}D, expected {dimension}D")


def tabulate(
    alphabet: Alphabet,
    neighborhood: Neighborhood,
    rule: Callable[[list[np.ndarray]], np.ndarray],
    name: str = "",
) -> CellularAutomaton:
    """Build a table from a vectorised rule.

    ``rule`` receives one broadcastable id array per neighborhood offset and
    returns the output ids.
    """
    shape = (alphabet.size,) * len(neighborhood)
    contexts = list(np.indices(shape, sparse=True))
    table = np.broadcast_to(np.asarray(rule(contexts), dtype=STATE_DTYPE), shape)
    return CellularAutomaton(alphabet, neighborhood, table, name)
