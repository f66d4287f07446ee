"""State-change relation, freezing orders and empirical change counts."""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import networkx as nx
import numpy as np

from src.ca import CellularAutomaton, Configuration, Position, Window
from src.ca.dynamics import orbit_window
from src.ca.errors import CAError
from src.config import Config
from src.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class StateChangeRelation:
    """Arcs (q, p), q != p, such that some context maps center q to p."""

    size: int
    arcs: frozenset[tuple[int, int]]

    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from(self.arcs)
        return graph


@dataclass(frozen=True)
class Freezing:
    """Acyclic change relation.

    ``comparabilities`` holds every pair (a, b) with a below-or-equal b; a cell
    in state q can only move to states below q.
    """

    size: int
    arcs: frozenset[tuple[int, int]]
    comparabilities: frozenset[tuple[int, int]]

    def precedes(self, a: int, b: int) -> bool:
        return (a, b) in self.comparabilities

    def linear_extension(self) -> list[int]:
        """States from minimum to maximum, compatible with the order."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from(self.arcs)
        return list(reversed(list(nx.lexicographical_topological_sort(graph))))

    def is_nonincreasing(self, states: Sequence[int]) -> bool:
        return all(self.precedes(int(b), int(a)) for a, b in zip(states, states[1:]))


@dataclass(frozen=True)
class NotFreezing:
    cycle: tuple[int, ...]


FreezingOrder = Union[Freezing, NotFreezing]


@dataclass(frozen=True)
class ChangeProfile:
    """Change counts per cell; each count is the maximum over the sampled configurations."""

    max_changes_observed: int
    per_cell: dict[Position, int]
    horizon: int
    sample_count: int
    unsettled_samples: int = 0

    @property
    def settled(self) -> bool:
        """Whether every sampled window ended on a constant tail."""
        return self.unsettled_samples == 0


def state_change_relation(ca: CellularAutomaton) -> StateChangeRelation:
    """Scan the table once; without the origin in V every output is reachable from every state."""
    center = ca.neighborhood.center_index
    arcs = set()
    for q in range(ca.size):
        entries = ca.table if center is None else np.take(ca.table, q, axis=center)
        arcs.update((q, int(p)) for p in np.unique(entries) if p != q)
    return StateChangeRelation(ca.size, frozenset(arcs))


def _shortest_cycle(graph: nx.DiGraph) -> tuple[int, ...]:
    best = None
    for u, v in sorted(graph.edges()):
        try:
            path = nx.shortest_path(graph, v, u)
        except nx.NetworkXNoPath:
            continue
        cycle = (u,) + tuple(path[:-1])
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


def check_freezing(ca: CellularAutomaton) -> FreezingOrder:
    """Freezing iff the state-change relation is acyclic.

    Returns:
        Freezing with the reflexive-transitive order, or NotFreezing with a
        shortest cycle of the relation
    """
    relation = state_change_relation(ca)
    graph = relation.graph()
    if nx.is_directed_acyclic_graph(graph):
        closure = nx.transitive_closure_dag(graph)
        below = {(b, a) for a, b in closure.edges()}
        below.update((q, q) for q in range(ca.size))
        logger.debug(f"{ca.name or 'automaton'}: freezing, {len(relation.arcs)} arcs")
        return Freezing(ca.size, relation.arcs, frozenset(below))
    cycle = _shortest_cycle(graph)
    logger.debug(f"{ca.name or 'automaton'}: not freezing, cycle {ca.alphabet.names(cycle)}")
    return NotFreezing(cycle)


def change_profile(
    ca: CellularAutomaton,
    configs: Iterable[Configuration],
    window: Window,
    horizon: int,
    confirm_tail: Optional[int] = None,
) -> ChangeProfile:
    """Count state changes of every window cell along each orbit.

    A sample is unsettled when its window still changed during the last
    ``confirm_tail`` steps of the horizon.
    """
    if horizon < 1:
        raise CAError(f"Horizon must be at least 1, got {horizon}")
    confirm_tail = Config.DEFAULT_CONFIRM_TAIL if confirm_tail is None else confirm_tail
    counts = np.zeros(window.shape, dtype=np.int64)
    samples = 0
    unsettled = 0
    for c in configs:
        history = orbit_window(ca, c, window, horizon)
        counts = np.maximum(counts, np.count_nonzero(history[1:] != history[:-1], axis=0))
        if not (history[-(confirm_tail + 1):] == history[-1]).all():
            unsettled += 1
        samples += 1
    per_cell = {
        cell: int(counts[tuple(x - a for x, a in zip(cell, window.lo))])
        for cell in window.cells()
    }
    return ChangeProfile(int(counts.max(initial=0)), per_cell, horizon, samples, unsettled)

