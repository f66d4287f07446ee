"""Alphabets and neighborhoods."""
import itertools
import operator
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

from src.ca.errors import CAError, DimensionMismatchError, UnknownStateError

Position = tuple[int, ...]
PositionLike = Union[int, Sequence[int]]


def as_position(value: PositionLike, dimension: Optional[int] = None) -> Position:
    """Normalise an int (1D) or an integer sequence into a position tuple."""
    if hasattr(value, "__index__"):
        position = (operator.index(value),)
    else:
        position = tuple(operator.index(v) for v in value)
    if dimension is not None and len(position) != dimension:
        raise DimensionMismatchError(f"Position {position} is not {dimension}-dimensional")
    return position


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of state names; the id of a state is its index."""

    symbols: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise CAError("An alphabet needs at least one state")
        if len(set(symbols)) != len(symbols):
            raise CAError(f"Duplicate state names in alphabet: {symbols}")
        for s in symbols:
            if not s or any(ch.isspace() for ch in s) or s.startswith("#"):
                raise CAError(f"Invalid state name: {s!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def id_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownStateError(f"Unknown state {name!r}") from None

    def name_of(self, state: int) -> str:
        if not 0 <= state < len(self.symbols):
            raise UnknownStateError(f"State id {state} outside 0..{len(self.symbols) - 1}")
        return self.symbols[state]

    def ids(self, names: Iterable[str]) -> list[int]:
        return [self.id_of(n) for n in names]

    def names(self, states: Iterable[int]) -> list[str]:
        return [self.name_of(int(s)) for s in states]


@dataclass(frozen=True)
class Neighborhood:
    """Finite list of distinct offsets in Z^d."""

    offsets: tuple[Position, ...]
    dimension: int = 0

    def __post_init__(self):
        offsets = tuple(as_position(v) for v in self.offsets)
        if not offsets:
            raise CAError("A neighborhood needs at least one offset")
        dims = {len(v) for v in offsets}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Offsets of mixed dimensions: {offsets}")
        dimension = dims.pop()
        if self.dimension and self.dimension != dimension:
            raise DimensionMismatchError(f"Offsets are {dimension}-dimensional, expected {self.dimension}")
        if dimension < 1:
            raise CAError("Dimension must be at least 1")
        if len(set(offsets)) != len(offsets):
            raise CAError(f"Duplicate offsets in neighborhood: {offsets}")
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "dimension", dimension)

    def __len__(self) -> int:
        return len(self.offsets)

    def __iter__(self) -> Iterator[Position]:
        return iter(self.offsets)

    @property
    def radius(self) -> int:
        return max(max(abs(x) for x in v) for v in self.offsets)

    @property
    def origin(self) -> Position:
        return (0,) * self.dimension

    def index_of(self, offset: PositionLike) -> Optional[int]:
        offset = as_position(offset, self.dimension)
        try:
            return self.offsets.index(offset)
        except ValueError:
            return None

    @property
    def center_index(self) -> Optional[int]:
        return self.index_of(self.origin)

    def contains(self, other: "Neighborhood") -> bool:
        return set(other.offsets) <= set(self.offsets)

    def union(self, other: "Neighborhood") -> "Neighborhood":
        merged = list(self.offsets) + [v for v in other.offsets if v not in self.offsets]
        return Neighborhood(tuple(merged))

    def mirrored(self) -> "Neighborhood":
        return Neighborhood(tuple(tuple(-x for x in v) for v in self.offsets))

    def one_way_direction(self) -> Optional[int]:
        """For 1D neighborhoods: -1 if all offsets are <= 0, +1 if all are >= 0, else None."""
        if self.dimension != 1:
            return None
        values = [v[0] for v in self.offsets]
        if all(x <= 0 for x in values):
            return -1
        if all(x >= 0 for x in values):
            return 1
        return None

    @classmethod
    def ball(cls, dimension: int, radius: int) -> "Neighborhood":
        """All offsets of max-norm at most ``radius`` in row-major order."""
        span = range(-radius, radius + 1)
        return cls(tuple(itertools.product(span, repeat=dimension)))

    @classmethod
    def von_neumann(cls, dimension: int, radius: int = 1, include_center: bool = True) -> "Neighborhood":
        span = range(-radius, radius + 1)
        offsets = [
            v for v in itertools.product(span, repeat=dimension)
            if sum(abs(x) for x in v) <= radius and (include_center or any(v))
        ]
        return cls(tuple(offsets))

    @classmethod
    def interval(cls, low: int, high: int) -> "Neighborhood":
        """1D neighborhood {low, ..., high}."""
        return cls(tuple((x,) for x in range(low, high + 1)))

    def __str__(self) -> str:
        return " ".join(",".join(str(x) for x in v) for v in self.offsets)
