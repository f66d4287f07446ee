"""Configurations as a background plus finitely many overrides, windows and patterns."""
import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Union

import numpy as np

from src.ca.alphabet import Position, PositionLike, as_position
from src.ca.automaton import STATE_DTYPE, CellularAutomaton
from src.ca.errors import CAError, DimensionMismatchError


@dataclass(frozen=True)
class UniformBackground:
    """Every cell in the same state."""

    state: int

    dimension = None

    def value_at(self, position: Position) -> int:
        return self.state

    def fill(self, lo: Position, shape: tuple[int, ...]) -> np.ndarray:
        return np.full(shape, self.state, dtype=STATE_DTYPE)

    def states(self) -> set[int]:
        return {self.state}

    def shifted(self, offset: Position) -> "UniformBackground":
        return self

    def canonical(self) -> "Background":
        return self

    def seed_cells(self) -> list[Position]:
        return []

    def image(self, ca: CellularAutomaton) -> "Background":
        return UniformBackground(ca.uniform_image(self.state))


@dataclass(frozen=True, eq=False)
class PeriodicBackground:
    """A block repeated along every axis; ``block.shape`` is the period vector."""

    block: np.ndarray

    def __post_init__(self):
        block = np.array(self.block, dtype=STATE_DTYPE)
        if block.ndim == 0 or 0 in block.shape:
            raise CAError("A periodic background needs a non-empty block with nonzero periods")
        block = _minimal_block(block)
        block.setflags(write=False)
        object.__setattr__(self, "block", block)

    @property
    def dimension(self) -> int:
        return self.block.ndim

    @property
    def periods(self) -> tuple[int, ...]:
        return self.block.shape

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PeriodicBackground) and np.array_equal(self.block, other.block)

    def __hash__(self) -> int:
        return hash((self.block.shape, self.block.tobytes()))

    def __repr__(self) -> str:
        return f"PeriodicBackground(periods={self.periods}, block={self.block.ravel().tolist()})"

    def value_at(self, position: Position) -> int:
        return int(self.block[tuple(p % q for p, q in zip(position, self.periods))])

    def fill(self, lo: Position, shape: tuple[int, ...]) -> np.ndarray:
        index = np.ix_(*[np.arange(l, l + s) % p for l, s, p in zip(lo, shape, self.periods)])
        return self.block[index].astype(STATE_DTYPE)

    def states(self) -> set[int]:
        return set(np.unique(self.block).tolist())

    def shifted(self, offset: Position) -> "PeriodicBackground":
        return PeriodicBackground(np.roll(self.block, offset, axis=tuple(range(self.dimension))))

    def canonical(self) -> "Background":
        if np.all(self.block == self.block.flat[0]):
            return UniformBackground(int(self.block.flat[0]))
        return self

    def seed_cells(self) -> list[Position]:
        return []

    def image(self, ca: CellularAutomaton) -> "Background":
        r = ca.radius
        padded = self.fill((-r,) * self.dimension, tuple(p + 2 * r for p in self.periods))
        return PeriodicBackground(ca.apply(padded)).canonical()


@dataclass(frozen=True)
class SplitBackground:
    """1D background equal to ``left`` on cells < cut and ``right`` on cells >= cut."""

    cut: int
    left: int
    right: int

    dimension = 1

    def value_at(self, position: Position) -> int:
        return self.left if position[0] < self.cut else self.right

    def fill(self, lo: Position, shape: tuple[int, ...]) -> np.ndarray:
        cells = np.arange(lo[0], lo[0] + shape[0])
        return np.where(cells < self.cut, self.left, self.right).astype(STATE_DTYPE)

    def states(self) -> set[int]:
        return {self.left, self.right}

    def shifted(self, offset: Position) -> "SplitBackground":
        return SplitBackground(self.cut + offset[0], self.left, self.right)

    def canonical(self) -> "Background":
        if self.left == self.right:
            return UniformBackground(self.left)
        return self

    def seed_cells(self) -> list[Position]:
        return [(self.cut - 1,), (self.cut,)]

    def image(self, ca: CellularAutomaton) -> "Background":
        return SplitBackground(self.cut, ca.uniform_image(self.left), ca.uniform_image(self.right)).canonical()


Background = Union[UniformBackground, PeriodicBackground, SplitBackground]


def _minimal_block(block: np.ndarray) -> np.ndarray:
    for axis, length in enumerate(block.shape):
        for period in range(1, length):
            if length % period == 0 and np.array_equal(block, np.roll(block, period, axis=axis)):
                block = np.take(block, range(period), axis=axis)
                break
    return block


def as_background(value: Union[int, Background]) -> Background:
    if isinstance(value, (UniformBackground, PeriodicBackground, SplitBackground)):
        return value.canonical()
    return UniformBackground(int(value))


@dataclass(frozen=True)
class Window:
    """Box of cells ``lo <= z <= hi`` (inclusive, componentwise)."""

    lo: Position
    hi: Position

    def __post_init__(self):
        lo = as_position(self.lo)
        hi = as_position(self.hi, len(lo))
        if any(a > b for a, b in zip(lo, hi)):
            raise CAError(f"Empty window {lo}..{hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def ball(cls, dimension: int, radius: int, center: Optional[PositionLike] = None) -> "Window":
        center = as_position(center, dimension) if center is not None else (0,) * dimension
        return cls(tuple(x - radius for x in center), tuple(x + radius for x in center))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "Window":
        return cls((lo,), (hi,))

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    def __len__(self) -> int:
        return int(np.prod(self.shape))

    def cells(self) -> Iterator[Position]:
        """Cells in row-major order (last coordinate fastest)."""
        return itertools.product(*[range(a, b + 1) for a, b in zip(self.lo, self.hi)])

    def contains(self, position: PositionLike) -> bool:
        position = as_position(position, self.dimension)
        return all(a <= x <= b for a, x, b in zip(self.lo, position, self.hi))

    def expanded(self, margin: int) -> "Window":
        return Window(tuple(a - margin for a in self.lo), tuple(b + margin for b in self.hi))

    def ball_radius(self) -> Optional[int]:
        """Radius when this window is a ball centred at the origin."""
        radius = self.hi[0]
        if all(a == -radius for a in self.lo) and all(b == radius for b in self.hi):
            return radius
        return None


@dataclass(frozen=True, eq=False)
class Configuration:
    """Assignment of a state to every cell of Z^d.

    Stored as a background (uniform, periodic or split) and a finite map of
    overrides. Overrides never repeat the background value.
    """

    dimension: int
    background: Background
    overrides: Mapping[Position, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.dimension < 1:
            raise CAError("Dimension must be at least 1")
        background = as_background(self.background)
        if background.dimension is not None and background.dimension != self.dimension:
            raise DimensionMismatchError(
                f"{background.dimension}D background for a {self.dimension}D configuration"
            )
        cells = {}
        for position, state in self.overrides.items():
            position = as_position(position, self.dimension)
            state = int(state)
            if state != background.value_at(position):
                cells[position] = state
        object.__setattr__(self, "background", background)
        object.__setattr__(self, "overrides", MappingProxyType(dict(sorted(cells.items()))))

    @classmethod
    def uniform(cls, dimension: int, state: int) -> "Configuration":
        return cls(dimension, UniformBackground(state))

    @classmethod
    def from_cells(
        cls,
        dimension: int,
        background: Union[int, Background],
        cells: Mapping[PositionLike, int],
    ) -> "Configuration":
        return cls(dimension, as_background(background), {as_position(p, dimension): s for p, s in cells.items()})

    @classmethod
    def from_array(
        cls,
        values: np.ndarray,
        lo: PositionLike,
        background: Union[int, Background],
    ) -> "Configuration":
        """Place a dense array with its first cell at ``lo`` over a background."""
        values = np.asarray(values)
        lo = as_position(lo, values.ndim)
        background = as_background(background)
        differs = np.argwhere(values != background.fill(lo, values.shape))
        cells = {
            tuple(int(a + b) for a, b in zip(lo, index)): int(values[tuple(index)])
            for index in differs
        }
        return cls(values.ndim, background, cells)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Configuration)
            and self.dimension == other.dimension
            and self.background == other.background
            and dict(self.overrides) == dict(other.overrides)
        )

    def __hash__(self) -> int:
        return hash((self.dimension, self.background, tuple(self.overrides.items())))

    def __repr__(self) -> str:
        return f"Configuration(dimension={self.dimension}, background={self.background!r}, overrides={dict(self.overrides)})"

    def value_at(self, position: PositionLike) -> int:
        position = as_position(position, self.dimension)
        state = self.overrides.get(position)
        return self.background.value_at(position) if state is None else state

    def states(self) -> set[int]:
        return self.background.states() | set(self.overrides.values())

    def restrict(self, cells: Iterable[PositionLike]) -> tuple[int, ...]:
        return tuple(self.value_at(p) for p in cells)

    def bounding_box(self) -> Optional[Window]:
        """Smallest window holding every override and the split point of a split background."""
        cells = list(self.overrides) + self.background.seed_cells()
        if not cells:
            return None
        lo = tuple(min(p[a] for p in cells) for a in range(self.dimension))
        hi = tuple(max(p[a] for p in cells) for a in range(self.dimension))
        return Window(lo, hi)

    def window(self, window: Window) -> np.ndarray:
        """Dense array of the states inside ``window``."""
        if window.dimension != self.dimension:
            raise DimensionMismatchError(f"{window.dimension}D window on a {self.dimension}D configuration")
        grid = self.background.fill(window.lo, window.shape)
        for position, state in self.overrides.items():
            if window.contains(position):
                grid[tuple(x - a for x, a in zip(position, window.lo))] = state
        return grid

    def with_cells(self, cells: Mapping[PositionLike, int]) -> "Configuration":
        merged = dict(self.overrides)
        merged.update({as_position(p, self.dimension): int(s) for p, s in cells.items()})
        return Configuration(self.dimension, self.background, merged)

    def with_background(self, background: Union[int, Background]) -> "Configuration":
        """Same explicit cells over another background."""
        return Configuration(self.dimension, as_background(background), dict(self.overrides))

    def shift(self, offset: PositionLike) -> "Configuration":
        """Translate the content by ``offset``: result(z + offset) = self(z)."""
        offset = as_position(offset, self.dimension)
        moved = {tuple(x + s for x, s in zip(p, offset)): v for p, v in self.overrides.items()}
        return Configuration(self.dimension, self.background.shifted(offset), moved)


@dataclass(frozen=True, eq=False)
class Pattern:
    """States on the ball B(radius) around the origin, stored as a dense array."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=STATE_DTYPE)
        if values.ndim < 1:
            raise CAError("A pattern needs at least one dimension")
        side = values.shape[0]
        if side % 2 != 1 or any(s != side for s in values.shape):
            raise CAError(f"Pattern array of shape {values.shape} is not a ball")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_configuration(
        cls,
        c: Configuration,
        radius: int,
        center: Optional[PositionLike] = None,
    ) -> "Pattern":
        return cls(c.window(Window.ball(c.dimension, radius, center)))

    @classmethod
    def from_values(cls, dimension: int, radius: int, values: Iterable[int]) -> "Pattern":
        array = np.array(list(values), dtype=STATE_DTYPE)
        side = 2 * radius + 1
        if array.size != side ** dimension:
            raise CAError(f"Expected {side ** dimension} values for a radius-{radius} {dimension}D pattern, got {array.size}")
        return cls(array.reshape((side,) * dimension))

    @property
    def radius(self) -> int:
        return self.values.shape[0] // 2

    @property
    def dimension(self) -> int:
        return self.values.ndim

    @property
    def window(self) -> Window:
        return Window.ball(self.dimension, self.radius)

    @property
    def center(self) -> int:
        return int(self.values[(self.radius,) * self.dimension])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Pattern) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.values.shape, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"Pattern(radius={self.radius}, values={self.values.tolist()})"

    def value_at(self, offset: PositionLike) -> int:
        offset = as_position(offset, self.dimension)
        return int(self.values[tuple(x + self.radius for x in offset)])

    def cells(self) -> dict[Position, int]:
        return {p: self.value_at(p) for p in self.window.cells()}

    def sub_pattern(self, radius: int) -> "Pattern":
        if radius > self.radius:
            raise CAError(f"Cannot take a radius-{radius} sub-pattern of a radius-{self.radius} pattern")
        cut = self.radius - radius
        return Pattern(self.values[tuple(slice(cut, cut + 2 * radius + 1) for _ in range(self.dimension))])

    def to_configuration(self, background: Union[int, Background]) -> "Configuration":
        """The configuration of the cylinder [self] equal to ``background`` elsewhere."""
        return Configuration.from_array(self.values, (-self.radius,) * self.dimension, background)

    def matches(self, c: Configuration, center: Optional[PositionLike] = None) -> bool:
        """Whether ``c`` lies in the cylinder of this pattern (placed at ``center``)."""
        return np.array_equal(c.window(Window.ball(self.dimension, self.radius, center)), self.values)
