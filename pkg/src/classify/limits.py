"""Limits of 1D bounded-change orbits from change counts, and cell grouping."""
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from src.ca import (
    Alphabet,
    CAError,
    CellularAutomaton,
    Configuration,
    Neighborhood,
    PeriodicBackground,
    SplitBackground,
    UniformBackground,
)
from src.ca.automaton import check_dimension
from src.ca.dynamics import step
from src.config import Config
from src.utils import get_logger

logger = get_logger(__name__)


class LimitOracleError(ValueError):
    """The supplied change counts do not match the orbit."""


def oracle_change_counts(
    ca: CellularAutomaton,
    c: Configuration,
    cells: Iterable[int],
    horizon: int,
) -> dict[int, int]:
    """Number of changes of each cell over a long direct simulation."""
    cells = list(cells)
    counts = dict.fromkeys(cells, 0)
    current = c
    for _ in range(horizon):
        following = step(ca, current)
        for z in cells:
            if following.value_at((z,)) != current.value_at((z,)):
                counts[z] += 1
        current = following
    return counts


def limit_segment_with_counts(
    ca: CellularAutomaton,
    c: Configuration,
    z: int,
    z_right: int,
    changes_left: int,
    changes_right: int,
    k: int,
    step_cap: Optional[int] = None,
) -> tuple[int, ...]:
    """Limit states on [z, z_right] of a radius-1 k-change orbit.

    Simulates until cell z has changed ``changes_left`` times and cell z_right
    ``changes_right`` times, then runs ``k * (z_right - z)`` more steps: after
    that the segment, enclosed by two frozen cells, has frozen as well.

    Args:
        ca: 1D automaton of radius at most 1 (group cells first otherwise)
        c: Initial configuration
        z: Left end of the segment
        z_right: Right end of the segment
        changes_left: Exact total number of changes of cell z
        changes_right: Exact total number of changes of cell z_right
        k: Change bound of the orbit
        step_cap: Largest number of simulated steps (default: Config.LIMIT_STEP_CAP)

    Returns:
        Limit states of the segment, left to right

    Raises:
        LimitOracleError: If the counts are exceeded or not reached within the cap
    """
    check_dimension(ca, 1)
    if ca.radius > 1:
        raise CAError(f"Radius {ca.radius} rule: group cells to radius 1 first")
    if z > z_right:
        raise CAError(f"Empty segment [{z}, {z_right}]")
    cap = Config.LIMIT_STEP_CAP if step_cap is None else step_cap
    targets = {z: changes_left, z_right: changes_right}
    seen = dict.fromkeys(targets, 0)
    t = 0
    current = c
    extra = k * (z_right - z)
    settled_at = None
    while True:
        if settled_at is None and all(seen[x] == targets[x] for x in targets):
            settled_at = t
            logger.debug(f"Counts reached at t={t}; running {extra} more steps")
        if settled_at is not None and t == settled_at + extra:
            break
        if t >= cap:
            raise LimitOracleError(f"Change counts {targets} not reached within {cap} steps (observed {seen})")
        following = step(ca, current)
        t += 1
        for x in targets:
            if following.value_at((x,)) != current.value_at((x,)):
                seen[x] += 1
                if seen[x] > targets[x]:
                    raise LimitOracleError(f"Cell {x} changed more than the {targets[x]} announced times")
        current = following
    return tuple(current.value_at((x,)) for x in range(z, z_right + 1))


@dataclass(frozen=True)
class GroupedAutomaton:
    """Radius-1 automaton over blocks of ``block`` consecutive cells of ``base``."""

    ca: CellularAutomaton
    base: CellularAutomaton
    block: int

    def _pack(self, states: Iterable[int]) -> int:
        code = 0
        for q in states:
            code = code * self.base.size + int(q)
        return code

    def _unpack(self, code: int) -> list[int]:
        states = []
        for _ in range(self.block):
            code, q = divmod(int(code), self.base.size)
            states.append(q)
        return states[::-1]

    def encode(self, c: Configuration) -> Configuration:
        """Configuration of blocks; block j holds cells jb .. jb+b-1."""
        b = self.block
        background = c.background
        extra: list[int] = []
        if isinstance(background, UniformBackground):
            grouped = UniformBackground(self._pack([background.state] * b))
        elif isinstance(background, PeriodicBackground):
            period = math.lcm(background.periods[0], b)
            row = background.fill((0,), (period,))
            grouped = PeriodicBackground(np.array([self._pack(row[j:j + b]) for j in range(0, period, b)]))
        else:
            cut = -(-background.cut // b)
            grouped = SplitBackground(
                cut, self._pack([background.left] * b), self._pack([background.right] * b)
            )
            extra = [cut - 1]
        blocks = {x[0] // b for x in c.overrides} | set(extra)
        cells = {(j,): self._pack(c.value_at((j * b + i,)) for i in range(b)) for j in blocks}
        return Configuration(1, grouped, cells)

    def decode(self, c: Configuration) -> Configuration:
        b = self.block
        background = c.background
        if isinstance(background, UniformBackground):
            block = self._unpack(background.state)
            base = PeriodicBackground(np.array(block))
        elif isinstance(background, PeriodicBackground):
            base = PeriodicBackground(np.concatenate([self._unpack(code) for code in background.block]))
        else:
            left, right = self._unpack(background.left), self._unpack(background.right)
            if len(set(left)) != 1 or len(set(right)) != 1:
                raise CAError("Split background with mixed blocks has no split form on cells")
            base = SplitBackground(background.cut * b, left[0], right[0])
        cells = {}
        for (j,), code in c.overrides.items():
            for i, q in enumerate(self._unpack(code)):
                cells[(j * b + i,)] = q
        return Configuration(1, base, cells)


def group_cells(ca: CellularAutomaton, block: Optional[int] = None) -> GroupedAutomaton:
    """Group ``block`` (default: the radius) consecutive cells into one, giving a radius-1 rule."""
    check_dimension(ca, 1)
    b = block or max(1, ca.radius)
    if b < ca.radius:
        raise CAError(f"Blocks of {b} cells cannot carry a radius-{ca.radius} rule")
    r = ca.radius
    names = [
        "+".join(ca.alphabet.names(states))
        for states in itertools.product(range(ca.size), repeat=b)
    ]
    alphabet = Alphabet(tuple(names))
    offsets = [v[0] for v in ca.neighborhood.offsets]
    n = ca.size
    powers = [n ** (b - 1 - i) for i in range(b)]

    def rule(context: tuple[int, ...]) -> int:
        cells = []
        for code in context:
            cells.extend((code // p) % n for p in powers)
        # cells[b + i] is cell i of the middle block
        out = 0
        for i in range(b):
            out = out * n + int(ca.table[tuple(cells[b + i + v] for v in offsets)])
        return out

    grouped = CellularAutomaton.from_ids(alphabet, Neighborhood.interval(-1, 1), rule, f"{ca.name or 'rule'}/{b}")
    logger.debug(f"Grouped {ca.name or 'automaton'} into blocks of {b}: {alphabet.size} states")
    return GroupedAutomaton(grouped, ca, b)
