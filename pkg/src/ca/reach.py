"""Bounded search for cylinder reachability."""
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from src.ca.automaton import CellularAutomaton, check_dimension
from src.ca.configuration import Background, Configuration, Pattern, Window, as_background
from src.ca.dynamics import iterate, step
from src.ca.errors import CAError
from src.config import Config
from src.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Reached:
    """``F^time(witness)`` lies in the target cylinder; ``witness`` lies in the source cylinder."""

    time: int
    witness: Configuration
    extension: int


@dataclass(frozen=True)
class Unknown:
    candidates: int
    exhausted: bool


ReachResult = Union[Reached, Unknown]


def _ring(dimension: int, inner: int, outer: int) -> list[tuple[int, ...]]:
    return [
        cell for cell in Window.ball(dimension, outer).cells()
        if max(abs(x) for x in cell) > inner
    ]


def _candidates(ca: CellularAutomaton, u: Pattern, extension_radius: int, backgrounds: Sequence[Background]):
    cells = u.cells()
    for extension in range(extension_radius + 1):
        ring = _ring(u.dimension, u.radius, u.radius + extension)
        for background in backgrounds:
            for states in itertools.product(range(ca.size), repeat=len(ring)):
                overrides = dict(cells)
                overrides.update(zip(ring, states))
                yield extension, Configuration(u.dimension, background, overrides)


def cyreach_bounded(
    ca: CellularAutomaton,
    u: Pattern,
    v: Pattern,
    t_max: int,
    extension_radius: int = 0,
    backgrounds: Optional[Sequence[Union[int, Background]]] = None,
    candidate_limit: Optional[int] = None,
) -> ReachResult:
    """Search configurations of the cylinder [u] whose orbit enters [v] within ``t_max`` steps.

    Candidates are ``u`` surrounded by every assignment of a ring of width
    ``0..extension_radius`` over each background, in that order. Every hit is
    checked again by a separate simulation before it is returned.

    Args:
        ca: Automaton
        u: Source pattern
        v: Target pattern (centered on the origin)
        t_max: Largest number of steps explored per candidate
        extension_radius: Largest ring width around u
        backgrounds: States or backgrounds used outside the ring (default: every uniform state)
        candidate_limit: Stop after this many candidates (default: Config.REACH_CANDIDATE_LIMIT)

    Returns:
        Reached with the least time for the first successful candidate, or Unknown
    """
    check_dimension(ca, u.dimension)
    check_dimension(ca, v.dimension)
    if t_max < 0:
        raise CAError(f"t_max must be non-negative, got {t_max}")
    limit = Config.REACH_CANDIDATE_LIMIT if candidate_limit is None else candidate_limit
    backgrounds = [as_background(b) for b in (range(ca.size) if backgrounds is None else backgrounds)]

    seen = set()
    count = 0
    for extension, c in _candidates(ca, u, extension_radius, backgrounds):
        if c in seen:
            continue
        seen.add(c)
        if count >= limit:
            logger.info(f"Reachability search stopped after {count} candidates")
            return Unknown(count, exhausted=False)
        count += 1
        current = c
        for t in range(t_max + 1):
            if v.matches(current):
                if not v.matches(iterate(ca, c, t)):
                    raise CAError(f"Reachability witness failed re-verification at t={t}")
                logger.info(f"Reached target cylinder at t={t} (extension {extension}, candidate {count})")
                return Reached(t, c, extension)
            if t < t_max:
                current = step(ca, current)
    logger.info(f"Reachability search exhausted {count} candidates without a hit")
    return Unknown(count, exhausted=True)
