"""Run-length encoded cell columns."""
import bisect
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class RleColumn:
    """States of one cell at times 0, 1, ... as (state, duration) segments.

    Adjacent segments always hold distinct states, so a column of a k-change
    orbit has at most k + 1 segments.
    """

    segments: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        segments = tuple((int(q), int(n)) for q, n in self.segments)
        for (a, n), (b, _) in zip(segments, segments[1:]):
            if a == b:
                raise ValueError(f"Adjacent segments share state {a}")
        if any(n < 1 for _, n in segments):
            raise ValueError("Segment durations must be positive")
        object.__setattr__(self, "segments", segments)
        starts = tuple(itertools.accumulate((n for _, n in segments[:-1]), initial=0)) if segments else ()
        object.__setattr__(self, "_starts", starts)

    @classmethod
    def from_sequence(cls, states: Iterable[int]) -> "RleColumn":
        return cls(tuple((int(q), len(list(run))) for q, run in itertools.groupby(states)))

    @property
    def height(self) -> int:
        """Number of time steps covered."""
        return sum(n for _, n in self.segments)

    @property
    def changes(self) -> int:
        return max(0, len(self.segments) - 1)

    @property
    def last(self) -> Optional[int]:
        return self.segments[-1][0] if self.segments else None

    def __len__(self) -> int:
        return len(self.segments)

    def value_at(self, time: int) -> int:
        if not 0 <= time < self.height:
            raise IndexError(f"Time {time} outside a column of height {self.height}")
        return self.segments[bisect.bisect_right(self._starts, time) - 1][0]

    def next_change(self, after: int) -> Optional[int]:
        """First segment start strictly after ``after``."""
        index = bisect.bisect_right(self._starts, after)
        return self._starts[index] if index < len(self._starts) else None

    def extended(self, state: int, duration: int = 1) -> "RleColumn":
        if duration < 1:
            return self
        if self.segments and self.segments[-1][0] == state:
            q, n = self.segments[-1]
            return RleColumn(self.segments[:-1] + ((q, n + duration),))
        return RleColumn(self.segments + ((int(state), duration),))

    def to_sequence(self) -> list[int]:
        return [q for q, n in self.segments for _ in range(n)]
