"""Streaming prediction for one-way bounded-change 1D automata."""
from typing import Optional

from src.ca import CAError, CellularAutomaton
from src.predict.instance import PredictionInstance
from src.predict.rle import RleColumn
from src.utils import get_logger

logger = get_logger(__name__)


class ChangeBoundExceededError(ValueError):
    """A column changed more often than the announced bound."""


class StreamingPredictor:
    """Sweeps the input in the dependency direction keeping only r + 1 columns.

    Column i is derived from columns i-r .. i on their run-length form: the
    local rule is evaluated only when an input column starts a new segment
    or the cell itself just changed.
    """

    def __init__(self, ca: CellularAutomaton, k: int):
        direction = ca.neighborhood.one_way_direction()
        if direction is None:
            raise CAError(f"{ca.name or 'automaton'} is not a one-way 1D rule")
        if k < 0:
            raise CAError(f"Change bound must be non-negative, got {k}")
        self.ca = ca if direction < 0 else ca.mirrored()
        self.mirrored = direction > 0
        self.k = k
        self.peak_live_columns = 0
        self.max_segments = 0

    def predict(self, inst: PredictionInstance) -> int:
        """Center state after ``inst.t`` steps.

        Raises:
            ChangeBoundExceededError: If a column changes more than ``k`` times
        """
        inst.check(self.ca)
        values = inst.pattern.values[::-1] if self.mirrored else inst.pattern.values
        ca, k = self.ca, self.k
        r = ca.radius
        t = inst.t
        offsets = [v[0] for v in ca.neighborhood.offsets]
        n = r * t
        live: dict[int, RleColumn] = {}
        column: Optional[RleColumn] = None
        for i in range(-n, 1):
            height = t if r == 0 else (i + n) // r
            column = RleColumn(((int(values[i + n]), 1),))
            self.peak_live_columns = max(self.peak_live_columns, len(live) + 1)
            neighbors = [live[i + v] for v in offsets if v != 0] if height > 0 else []
            tau = 1
            while tau <= height:
                context = tuple(
                    column.last if v == 0 else live[i + v].value_at(tau - 1)
                    for v in offsets
                )
                q = ca.local(context)
                if q != column.last:
                    column = column.extended(q)
                    if column.changes > k:
                        raise ChangeBoundExceededError(f"Cell {i} changes more than {k} times by step {tau}")
                    tau += 1
                    continue
                starts = [s for s in (col.next_change(tau - 1) for col in neighbors) if s is not None]
                until = min([height] + starts)
                column = column.extended(q, until - tau + 1)
                tau = until + 1
            self.max_segments = max(self.max_segments, len(column))
            if r > 0:
                live[i] = column
                live.pop(i - r, None)
        logger.debug(f"Streamed {n + 1} columns, peak {self.peak_live_columns} live, {self.max_segments} segments")
        return column.value_at(t)


def predict_oneway_stream(ca: CellularAutomaton, inst: PredictionInstance, k: int) -> int:
    return StreamingPredictor(ca, k).predict(inst)
