"""Prediction instances and the direct oracle."""
from dataclasses import dataclass
from typing import Optional

from src.ca import CAError, CellularAutomaton, Pattern
from src.ca.automaton import check_dimension
from src.ca.dynamics import apply_to_pattern


@dataclass(frozen=True)
class PredictionInstance:
    """Does the center cell hold ``target`` after ``t`` steps from ``pattern``?"""

    t: int
    pattern: Pattern
    target: Optional[int] = None

    def check(self, ca: CellularAutomaton) -> None:
        """Raises CAError unless the pattern radius is exactly ``radius * t``."""
        check_dimension(ca, self.pattern.dimension)
        if self.t < 1:
            raise CAError(f"Prediction needs t >= 1, got {self.t}")
        if self.pattern.radius != ca.radius * self.t:
            raise CAError(
                f"Pattern radius {self.pattern.radius} does not match "
                f"radius {ca.radius} x t {self.t} = {ca.radius * self.t}"
            )

    def answer(self, state: int) -> Optional[bool]:
        return None if self.target is None else state == self.target


def predict_naive(ca: CellularAutomaton, inst: PredictionInstance) -> int:
    """Center state after applying the rule ``t`` times to the pattern."""
    inst.check(ca)
    u = inst.pattern
    for _ in range(inst.t):
        u = apply_to_pattern(ca, u)
    return u.value_at((0,) * u.dimension)
