"""Prediction inputs split between Alice (first coordinate <= 0) and Bob (> 0)."""
from dataclasses import dataclass

import numpy as np

from src.ca import CAError, CellularAutomaton, Pattern
from src.predict.instance import PredictionInstance

UNKNOWN = -1


def bits(count: int) -> int:
    """Bits needed to name one of ``count`` values."""
    return max(0, count - 1).bit_length()


def first_coordinate(shape: tuple[int, ...], radius: int) -> np.ndarray:
    """First coordinate of every cell of a ball array, broadcastable to ``shape``."""
    axis = np.arange(shape[0]) - radius
    return axis.reshape((-1,) + (1,) * (len(shape) - 1))


def alice_mask(shape: tuple[int, ...], radius: int) -> np.ndarray:
    return np.broadcast_to(first_coordinate(shape, radius) <= 0, shape)


@dataclass(frozen=True, eq=False)
class SplitInstance:
    """The two halves of a radius ``r n`` input for ``n`` steps.

    Both halves are stored at full size with ``UNKNOWN`` on the other
    party's cells.
    """

    n: int
    alice: np.ndarray
    bob: np.ndarray

    def __post_init__(self):
        alice = np.array(self.alice, dtype=np.int32)
        bob = np.array(self.bob, dtype=np.int32)
        if alice.shape != bob.shape:
            raise CAError(f"Halves of shapes {alice.shape} and {bob.shape} do not match")
        mask = alice_mask(alice.shape, alice.shape[0] // 2)
        if np.any(alice[~mask] != UNKNOWN) or np.any(bob[mask] != UNKNOWN):
            raise CAError("Each half must be unknown on the other party's cells")
        if np.any(alice[mask] < 0) or np.any(bob[~mask] < 0):
            raise CAError("Each half must be known on its own cells")
        alice.setflags(write=False)
        bob.setflags(write=False)
        object.__setattr__(self, "alice", alice)
        object.__setattr__(self, "bob", bob)

    @classmethod
    def from_pattern(cls, n: int, pattern: Pattern) -> "SplitInstance":
        values = pattern.values
        mask = alice_mask(values.shape, pattern.radius)
        return cls(n, np.where(mask, values, UNKNOWN), np.where(mask, UNKNOWN, values))

    @property
    def radius(self) -> int:
        return self.alice.shape[0] // 2

    @property
    def dimension(self) -> int:
        return self.alice.ndim

    @property
    def alice_cells(self) -> int:
        return int(np.count_nonzero(self.alice != UNKNOWN))

    def joined(self) -> Pattern:
        return Pattern(np.where(self.alice != UNKNOWN, self.alice, self.bob))

    def crossed(self, other: "SplitInstance") -> "SplitInstance":
        """Alice's half of this instance with Bob's half of ``other``."""
        return SplitInstance(self.n, self.alice, other.bob)

    def prediction(self) -> PredictionInstance:
        return PredictionInstance(self.n, self.joined())


def split_instance(ca: CellularAutomaton, inst: PredictionInstance) -> SplitInstance:
    """Split a prediction instance along the first coordinate."""
    inst.check(ca)
    return SplitInstance.from_pattern(inst.t, inst.pattern)
