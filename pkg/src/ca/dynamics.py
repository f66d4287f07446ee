"""Synchronous simulation, traces and freezing reports."""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from src.ca.alphabet import Position, PositionLike, as_position
from src.ca.automaton import CellularAutomaton, check_dimension
from src.ca.configuration import Configuration, Pattern, Window
from src.ca.errors import CAError, UnknownStateError
from src.config import Config
from src.utils import get_logger

logger = get_logger(__name__)

STABLE_STATE = "stable-state"
CONFIRMED_TAIL = "confirmed-tail"
UNWITNESSED = "unwitnessed"


@dataclass(frozen=True)
class Trace:
    """Restrictions of an orbit to a finite base, one row per time step."""

    base: tuple[Position, ...]
    rows: tuple[tuple[int, ...], ...]
    eventually_constant_at: Optional[int]

    @property
    def horizon(self) -> int:
        return len(self.rows) - 1


@dataclass(frozen=True)
class FreezingReport:
    """Observed freezing time and limit state of one cell.

    ``guarantee`` says why the time can be trusted: the final state is stable
    (no context changes it), the tail was constant for at least the confirmation
    length, or nothing was witnessed and both fields are None.
    """

    cell: Position
    freezing_time: Optional[int]
    limit_state: Optional[int]
    guarantee: str
    changes: int


@dataclass(frozen=True)
class LimitWindow:
    window: Window
    reports: dict[Position, FreezingReport]
    pattern: Optional[Pattern]

    @property
    def complete(self) -> bool:
        return all(r.freezing_time is not None for r in self.reports.values())

    def states(self) -> dict[Position, Optional[int]]:
        return {cell: report.limit_state for cell, report in self.reports.items()}


def _check_states(ca: CellularAutomaton, c: Configuration) -> None:
    bad = [q for q in c.states() if not 0 <= q < ca.size]
    if bad:
        raise UnknownStateError(f"Configuration uses state ids {sorted(bad)} outside the alphabet of {ca.name or 'automaton'}")


def step(ca: CellularAutomaton, c: Configuration) -> Configuration:
    """Apply the global map once.

    Only the cells within two radii of the explicit region are evaluated; every
    other cell sees a pure background neighborhood and takes the background image.
    """
    check_dimension(ca, c.dimension)
    _check_states(ca, c)
    background = c.background.image(ca)
    box = c.bounding_box()
    if box is None:
        return Configuration(c.dimension, background)
    r = ca.radius
    out_box = box.expanded(r)
    values = ca.apply(c.window(out_box.expanded(r)))
    return Configuration.from_array(values, out_box.lo, background)


def iterate(ca: CellularAutomaton, c: Configuration, steps: int) -> Configuration:
    if steps < 0:
        raise CAError(f"Step count must be non-negative, got {steps}")
    for _ in range(steps):
        c = step(ca, c)
    return c


def simulate(ca: CellularAutomaton, c: Configuration, steps: int) -> list[Configuration]:
    """Orbit ``[c, F(c), ..., F^steps(c)]``."""
    if steps < 0:
        raise CAError(f"Step count must be non-negative, got {steps}")
    orbit = [c]
    for t in range(steps):
        orbit.append(step(ca, orbit[-1]))
        logger.debug(f"{ca.name or 'automaton'} t={t + 1}: {len(orbit[-1].overrides)} explicit cells")
    return orbit


def apply_to_pattern(ca: CellularAutomaton, u: Pattern) -> Pattern:
    """Image of a radius n+r pattern as a radius n pattern."""
    check_dimension(ca, u.dimension)
    if u.radius < ca.radius:
        raise CAError(f"Pattern radius {u.radius} is smaller than the rule radius {ca.radius}")
    return Pattern(ca.apply(u.values))


def _constant_from(rows: Sequence) -> Optional[int]:
    """Least index from which every row equals the last; None if the last step changed."""
    last = len(rows) - 1
    if last == 0:
        return 0
    if rows[last] != rows[last - 1]:
        return None
    t0 = last
    while t0 > 0 and rows[t0 - 1] == rows[last]:
        t0 -= 1
    return t0


def trace(
    ca: CellularAutomaton,
    c: Configuration,
    base: Iterable[PositionLike],
    horizon: int,
) -> Trace:
    """Trace of base W: row i is F^i(c) restricted to W."""
    cells = tuple(as_position(p, c.dimension) for p in base)
    if not cells:
        raise CAError("A trace needs a non-empty base")
    rows = tuple(config.restrict(cells) for config in simulate(ca, c, horizon))
    return Trace(cells, rows, _constant_from(rows))


def column_report(
    ca: CellularAutomaton,
    cell: Position,
    column: Sequence[int],
    confirm_tail: int,
) -> FreezingReport:
    column = [int(q) for q in column]
    horizon = len(column) - 1
    changes = sum(1 for a, b in zip(column, column[1:]) if a != b)
    final = column[-1]
    t0 = horizon
    while t0 > 0 and column[t0 - 1] == final:
        t0 -= 1
    if final in ca.stable_states:
        return FreezingReport(cell, t0, final, STABLE_STATE, changes)
    if horizon - t0 >= confirm_tail:
        return FreezingReport(cell, t0, final, CONFIRMED_TAIL, changes)
    return FreezingReport(cell, None, None, UNWITNESSED, changes)


def freezing_report(
    ca: CellularAutomaton,
    c: Configuration,
    z: PositionLike,
    horizon: Optional[int] = None,
    confirm_tail: Optional[int] = None,
) -> FreezingReport:
    """Freezing time and limit state of cell ``z`` as far as the horizon can witness them.

    Args:
        ca: Automaton
        c: Initial configuration
        z: Observed cell
        horizon: Number of simulated steps (default: Config.DEFAULT_HORIZON)
        confirm_tail: Constant tail length required when the final state is not stable

    Returns:
        FreezingReport whose guarantee names the evidence behind the freezing time
    """
    horizon = Config.DEFAULT_HORIZON if horizon is None else horizon
    confirm_tail = Config.DEFAULT_CONFIRM_TAIL if confirm_tail is None else confirm_tail
    if horizon < 0:
        raise CAError(f"Horizon must be non-negative, got {horizon}")
    cell = as_position(z, c.dimension)
    column = [config.value_at(cell) for config in simulate(ca, c, horizon)]
    return column_report(ca, cell, column, confirm_tail)


def orbit_window(ca: CellularAutomaton, c: Configuration, window: Window, horizon: int) -> np.ndarray:
    """Space-time array of shape ``(horizon + 1, *window.shape)``."""
    return np.stack([config.window(window) for config in simulate(ca, c, horizon)])


def chi(c: Configuration, q: int, window: Window) -> frozenset[Position]:
    """Cells of ``window`` in state ``q``."""
    values = c.window(window)
    return frozenset(
        tuple(int(a + b) for a, b in zip(window.lo, index))
        for index in np.argwhere(values == q)
    )


def limit_window(
    ca: CellularAutomaton,
    c: Configuration,
    window: Window,
    horizon: Optional[int] = None,
    confirm_tail: Optional[int] = None,
) -> LimitWindow:
    """Freezing reports for every cell of a window.

    The limit pattern is filled in when the window is a ball around the origin
    and every cell has a witnessed limit state.
    """
    horizon = Config.DEFAULT_HORIZON if horizon is None else horizon
    confirm_tail = Config.DEFAULT_CONFIRM_TAIL if confirm_tail is None else confirm_tail
    history = orbit_window(ca, c, window, horizon)
    reports = {}
    for cell in window.cells():
        index = tuple(x - a for x, a in zip(cell, window.lo))
        reports[cell] = column_report(ca, cell, history[(slice(None),) + index], confirm_tail)
    result = LimitWindow(window, reports, None)
    if result.complete and window.ball_radius() is not None:
        values = np.array([reports[cell].limit_state for cell in window.cells()]).reshape(window.shape)
        result = LimitWindow(window, reports, Pattern(values))
    return result
