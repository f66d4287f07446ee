"""Prediction by guessing columns left to right and checking them locally."""
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from src.ca import CAError, CellularAutomaton
from src.config import Config
from src.predict.instance import PredictionInstance
from src.predict.rle import RleColumn
from src.utils import get_logger

logger = get_logger(__name__)


class NoConsistentColumnsError(ValueError):
    """No assignment of columns with at most k changes satisfies the rule."""


class SearchBudgetExceededError(ValueError):
    """The backtracking search visited more nodes than allowed."""


@dataclass(frozen=True)
class ColumnAssembly:
    state: int
    columns: dict[int, RleColumn]
    nodes: int

    @property
    def max_segments(self) -> int:
        return max(len(c) for c in self.columns.values())


class ColumnSearch:
    """Depth-first search over cells (i, tau), columns left to right.

    Column i spans times 0 .. h_i with ``h_i = (r t - |i|) // r``. A value
    C_i(tau) is admissible when it keeps the column within ``k`` changes and,
    for the column j whose constraint C_j(tau + 1) = f(C_{j+v}(tau), v in V)
    is completed by it, satisfies that constraint. Changes are tried before
    repeats, so the earliest change time is explored first.
    """

    def __init__(self, ca: CellularAutomaton, k: int, node_limit: Optional[int] = None):
        if ca.dimension != 1:
            raise CAError("Column search needs a 1D rule")
        if k < 0:
            raise CAError(f"Change bound must be non-negative, got {k}")
        self.ca = ca
        self.k = k
        self.node_limit = Config.SEARCH_NODE_LIMIT if node_limit is None else node_limit
        self.offsets = [v[0] for v in ca.neighborhood.offsets]
        self.known = [index for index, v in enumerate(self.offsets) if v <= 0]
        right = tuple(index for index, v in enumerate(self.offsets) if v > 0)
        # reachable[known inputs][q]: some right-hand inputs lead to q
        self.reachable = np.stack([np.any(ca.table == q, axis=right) for q in range(ca.size)], axis=-1)

    def _height(self, i: int, n: int, t: int) -> int:
        r = self.ca.radius
        return t if r == 0 else (n - abs(i)) // r

    def run(self, inst: PredictionInstance) -> ColumnAssembly:
        """Assemble all columns of the light cone of the center.

        Raises:
            NoConsistentColumnsError: If no assembly respects the bound
            SearchBudgetExceededError: If more than ``node_limit`` nodes are visited
        """
        inst.check(self.ca)
        ca, offsets = self.ca, self.offsets
        t = inst.t
        n = ca.radius * t
        heights = {i: self._height(i, n, t) for i in range(-n, n + 1)}
        cells = [(i, tau) for i in range(-n, n + 1) for tau in range(heights[i] + 1)]
        top = max(offsets)
        columns: dict[int, RleColumn] = {i: RleColumn() for i in heights}
        values = inst.pattern.values

        def value(i: int, tau: int) -> int:
            return columns[i].value_at(tau)

        def completes(i: int, tau: int) -> list[tuple[int, int]]:
            """Constraints whose last unknown cell is (i, tau)."""
            found = []
            # constraint of (i, tau) itself when every input lies in finished columns
            if tau >= 1 and top <= 0:
                found.append((i, tau))
            j = i - top
            if top > 0 and j in heights and 1 <= tau + 1 <= heights[j]:
                found.append((j, tau + 1))
            return found

        def candidates(i: int, tau: int) -> Iterator[int]:
            if tau == 0:
                # the input is fixed but may still complete a time-1 constraint to its left
                options = [int(values[i + n])]
            else:
                previous = columns[i].last
                options = [q for q in range(ca.size) if q != previous] + [previous]
                if columns[i].changes >= self.k:
                    options = [previous]
                if top > 0:
                    known = tuple(value(i + offsets[index], tau - 1) for index in self.known)
                    options = [q for q in options if self.reachable[known + (q,)]]
            for q in options:
                if all(self._satisfied(j, s, i, tau, q, value) for j, s in completes(i, tau)):
                    yield q

        stack: list[tuple[Iterator[int], RleColumn]] = []
        nodes = 0
        p = 0
        while p < len(cells):
            i, tau = cells[p]
            if len(stack) == p:
                stack.append((candidates(i, tau), columns[i]))
            options, saved = stack[p]
            columns[i] = saved
            q = next(options, None)
            if q is None:
                stack.pop()
                p -= 1
                if p < 0:
                    raise NoConsistentColumnsError(f"No columns with at most {self.k} changes fit the instance")
                continue
            nodes += 1
            if nodes > self.node_limit:
                raise SearchBudgetExceededError(f"Column search exceeded {self.node_limit} nodes")
            columns[i] = saved.extended(q)
            p += 1
        logger.debug(f"Column search settled {len(cells)} cells in {nodes} nodes")
        return ColumnAssembly(columns[0].value_at(t), dict(columns), nodes)

    def _satisfied(self, j: int, s: int, i: int, tau: int, q: int, value) -> bool:
        """Whether C_j(s) = f(C_{j+v}(s-1)) once (i, tau) holds q."""

        def at(x: int, time: int) -> int:
            return q if (x, time) == (i, tau) else value(x, time)

        context = tuple(at(j + v, s - 1) for v in self.offsets)
        return self.ca.local(context) == at(j, s)


def predict_column_search(
    ca: CellularAutomaton,
    inst: PredictionInstance,
    k: int,
    node_limit: Optional[int] = None,
) -> int:
    return ColumnSearch(ca, k, node_limit).run(inst).state
