"""De Bruijn graphs of 1D rules, fixed-point census and nilpotency of convergent rules."""
import itertools
from dataclasses import dataclass
from typing import Optional, Union

import networkx as nx
import numpy as np

from src.ca import CellularAutomaton, Configuration, Neighborhood, PeriodicBackground
from src.ca.automaton import check_dimension
from src.classify.changes import Freezing
from src.utils import get_logger

logger = get_logger(__name__)


class MissingCertificateError(ValueError):
    """Nilpotency was asked for without a convergence certificate."""


class _AssumedConvergent:
    def __repr__(self) -> str:
        return "ASSUMED_CONVERGENT"


ASSUMED_CONVERGENT = _AssumedConvergent()


@dataclass(frozen=True)
class DeBruijnGraph:
    """Vertices are words of length 2r; the edge ``w[:-1] -> w[1:]`` of each
    window ``w`` of length 2r+1 carries ``label = f(w)`` and ``center = w[r]``.
    """

    graph: nx.DiGraph
    radius: int
    ca: CellularAutomaton

    def consistent_subgraph(self) -> nx.DiGraph:
        """Edges whose label equals their center: circuits spell fixed points."""
        edges = [(u, v) for u, v, data in self.graph.edges(data=True) if data["label"] == data["center"]]
        return self.graph.edge_subgraph(edges).copy()


@dataclass(frozen=True)
class AtLeastTwo:
    witnesses: tuple[Configuration, ...]


@dataclass(frozen=True)
class ExactlyOneUniform:
    state: int


@dataclass(frozen=True)
class NoneFound:
    pass


FixedPointCensus = Union[AtLeastTwo, ExactlyOneUniform, NoneFound]


@dataclass(frozen=True)
class Nilpotent:
    state: int


@dataclass(frozen=True)
class NotNilpotent:
    witnesses: tuple[Configuration, ...]


NilpotencyVerdict = Union[Nilpotent, NotNilpotent]


def _radius_one_or_more(ca: CellularAutomaton) -> CellularAutomaton:
    radius = max(1, ca.radius)
    return ca.extended(Neighborhood.interval(-radius, radius))


def build_debruijn(ca: CellularAutomaton) -> DeBruijnGraph:
    """Build the labelled De Bruijn graph; radius-0 rules are padded to radius 1."""
    check_dimension(ca, 1)
    padded = _radius_one_or_more(ca)
    r = padded.radius
    graph = nx.DiGraph()
    graph.add_nodes_from(itertools.product(range(ca.size), repeat=2 * r))
    for window in itertools.product(range(ca.size), repeat=2 * r + 1):
        graph.add_edge(window[:-1], window[1:], label=int(padded.table[window]), center=window[r])
    logger.debug(f"De Bruijn graph of {ca.name or 'automaton'}: {graph.number_of_nodes()} vertices, {graph.number_of_edges()} edges")
    return DeBruijnGraph(graph, r, ca)


def uniform_fixed_points(ca: CellularAutomaton) -> list[int]:
    return [q for q in range(ca.size) if ca.uniform_image(q) == q]


def _circuit_witness(debruijn: DeBruijnGraph, q: int) -> Optional[Configuration]:
    consistent = debruijn.consistent_subgraph()
    for u, v, data in sorted(consistent.edges(data=True), key=lambda e: (e[0], e[1])):
        if data["label"] == q:
            continue
        try:
            path = nx.shortest_path(consistent, v, u)
        except nx.NetworkXNoPath:
            continue
        # Circuit u -> v -> ... -> u; the first letters of its vertices repeat with the circuit length.
        vertices = [u] + path[:-1]
        block = np.array([w[0] for w in vertices])
        return Configuration(1, PeriodicBackground(block))
    return None


def census_fixed_points(ca: CellularAutomaton) -> FixedPointCensus:
    """Count fixed points up to "at least two".

    Returns:
        AtLeastTwo with two fixed configurations, ExactlyOneUniform(q) when the
        uniform q is the only fixed point, or NoneFound without a uniform fixed point
    """
    check_dimension(ca, 1)
    uniform = uniform_fixed_points(ca)
    if len(uniform) >= 2:
        return AtLeastTwo(tuple(Configuration.uniform(1, q) for q in uniform))
    if not uniform:
        return NoneFound()
    q = uniform[0]
    witness = _circuit_witness(build_debruijn(ca), q)
    if witness is not None:
        return AtLeastTwo((Configuration.uniform(1, q), witness))
    return ExactlyOneUniform(q)


def decide_nilpotency_1d(ca: CellularAutomaton, certificate=None) -> NilpotencyVerdict:
    """Nilpotency of a convergent 1D rule: nilpotent iff it has a single fixed point.

    Args:
        ca: 1D automaton
        certificate: A Freezing verdict or ASSUMED_CONVERGENT

    Raises:
        MissingCertificateError: Without a convergence certificate
    """
    if not isinstance(certificate, Freezing) and certificate is not ASSUMED_CONVERGENT:
        raise MissingCertificateError(
            "Nilpotency is only decided for convergent rules; pass a Freezing verdict or ASSUMED_CONVERGENT"
        )
    census = census_fixed_points(ca)
    if isinstance(census, ExactlyOneUniform):
        return Nilpotent(census.state)
    if isinstance(census, AtLeastTwo):
        return NotNilpotent(census.witnesses)
    return NotNilpotent(())


def periodic_limits(ca: CellularAutomaton, max_period: int, steps: int) -> set[tuple[int, ...]]:
    """Images under F^steps of every spatially periodic configuration of period <= max_period.

    Each image is returned as its minimal repeating block.
    """
    check_dimension(ca, 1)
    offsets = [v[0] for v in ca.neighborhood.offsets]
    limits = set()
    for period in range(1, max_period + 1):
        words = np.array(list(itertools.product(range(ca.size), repeat=period)), dtype=np.int64)
        for _ in range(steps):
            words = ca.table[tuple(np.roll(words, -v, axis=1) for v in offsets)]
        for word in np.unique(words, axis=0):
            limits.add(tuple(int(x) for x in PeriodicBackground(word).block))
    return limits


def is_nilpotent_bruteforce(ca: CellularAutomaton, max_period: int, steps: int) -> bool:
    """Whether all periodic configurations of period <= max_period collapse to one uniform point."""
    limits = periodic_limits(ca, max_period, steps)
    return len(limits) == 1 and len(next(iter(limits))) == 1

