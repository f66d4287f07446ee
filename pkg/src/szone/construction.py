"""Shrinking-zone automata Z_F built around a radius-1 rule F.

States of Z_F:

* blank ``b`` (named by Config.BLANK_STATE), freshly erased blank ``b+``
  and error ``e``;
* zone cells ``(x,y,d)`` with x, y states of F and d one of ``<`` and ``>``
  (the head, moving left or right) or ``l`` and ``r`` (cells left and right
  of the head).

A head sweeps its working zone right then left, applying F to the first
layer on the way right, and erases one boundary cell at each end of the
zone per round trip. A right-moving head holds (current, next) values of
its cell; every other zone cell holds (current, previous).
"""
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Union

import numpy as np

from src.ca import Alphabet, CAError, CellularAutomaton, Neighborhood
from src.classify.spreading import check_spreading
from src.config import Config
from src.utils import get_logger

logger = get_logger(__name__)

BLANK = "b"
BLANK_PLUS = "b+"
ERROR = "e"

MOVE_LEFT = "<"
MOVE_RIGHT = ">"
LEFT_OF_HEAD = "l"
RIGHT_OF_HEAD = "r"
MODES = (MOVE_LEFT, MOVE_RIGHT, LEFT_OF_HEAD, RIGHT_OF_HEAD)
HEADS = (MOVE_LEFT, MOVE_RIGHT)


class ZoneCell(NamedTuple):
    first: int
    second: int
    mode: str

    @property
    def is_head(self) -> bool:
        return self.mode in HEADS

    def with_mode(self, mode: str) -> "ZoneCell":
        return ZoneCell(self.first, self.second, mode)

    def swapped(self, mode: str) -> "ZoneCell":
        return ZoneCell(self.second, self.first, mode)


Token = Union[str, ZoneCell]


def _zone(s: Token, *modes: str) -> bool:
    return isinstance(s, ZoneCell) and (not modes or s.mode in modes)


def _forbidden(a: Token, b: Token) -> bool:
    """Adjacent zone cells that never occur next to each other in a valid orbit."""
    if not (_zone(a) and _zone(b)):
        return False
    if (a.mode, b.mode) in ((RIGHT_OF_HEAD, LEFT_OF_HEAD), (LEFT_OF_HEAD, RIGHT_OF_HEAD)):
        return True
    if a.is_head and b.is_head:
        return True
    return (a.mode == RIGHT_OF_HEAD and b.is_head) or (a.is_head and b.mode == LEFT_OF_HEAD)


def zone_rule(delta: np.ndarray, left: Token, center: Token, right: Token, spreading: Optional[int] = None) -> Token:
    """Image of one Z_F neighborhood given as decoded tokens.

    Args:
        delta: Local map of F as an array indexed by (left, center, right)
        left, center, right: Decoded states of the neighborhood
        spreading: State of F whose appearance in a zone cell raises ``e``
            (the F_2 variant), or None for plain Z_F

    Returns:
        Decoded image state
    """
    context = (left, center, right)
    if ERROR in context:
        return ERROR
    if spreading is not None and any(_zone(s) and spreading in (s.first, s.second) for s in context):
        return ERROR
    if center in (BLANK, BLANK_PLUS):
        return BLANK
    if _forbidden(left, center) or _forbidden(center, right):
        return ERROR
    if left in (BLANK, BLANK_PLUS) and right in (BLANK, BLANK_PLUS):
        return center.with_mode(RIGHT_OF_HEAD)

    if center.mode == MOVE_LEFT:
        if left == BLANK and _zone(right, RIGHT_OF_HEAD):
            return center.with_mode(MOVE_RIGHT)
        if _zone(left, LEFT_OF_HEAD) and (_zone(right, RIGHT_OF_HEAD) or right == BLANK):
            return center.with_mode(RIGHT_OF_HEAD)
        return ERROR

    if center.mode == MOVE_RIGHT:
        if left == BLANK and _zone(right, RIGHT_OF_HEAD):
            return center.swapped(LEFT_OF_HEAD)
        if _zone(left, LEFT_OF_HEAD) and _zone(right, RIGHT_OF_HEAD):
            return center.swapped(LEFT_OF_HEAD)
        if _zone(left, LEFT_OF_HEAD) and right == BLANK:
            return center.with_mode(MOVE_LEFT)
        return ERROR

    if center.mode == LEFT_OF_HEAD:
        if _zone(right, MOVE_LEFT):
            if left == BLANK or _zone(left, LEFT_OF_HEAD):
                return center.with_mode(MOVE_LEFT)
            return ERROR
        if _zone(right, MOVE_RIGHT) and left == BLANK:
            return BLANK_PLUS
        return center

    # center.mode == RIGHT_OF_HEAD
    if _zone(left, MOVE_RIGHT):
        if _zone(right, RIGHT_OF_HEAD):
            return ZoneCell(center.first, int(delta[left.first, center.first, right.first]), MOVE_RIGHT)
        if right == BLANK:
            return center.with_mode(MOVE_RIGHT)
        return ERROR
    if _zone(left, MOVE_LEFT) and right == BLANK:
        return BLANK_PLUS
    return center


def local_map(inner: CellularAutomaton) -> np.ndarray:
    """Local map of a 1D radius <= 1 rule as an array over (left, center, right)."""
    if inner.dimension != 1 or inner.radius > 1:
        raise CAError(f"Shrinking zones need a 1D rule of radius at most 1, got {inner!r}")
    return inner.extended(Neighborhood.interval(-1, 1)).table


@dataclass(frozen=True, eq=False)
class SZoneRule:
    """Z_F (or its F_2 variant when ``spreading`` is set) with its symbol table."""

    ca: CellularAutomaton
    inner: CellularAutomaton
    tokens: tuple[Token, ...]
    spreading: Optional[int] = None

    @property
    def is_f2_variant(self) -> bool:
        return self.spreading is not None

    @cached_property
    def _index(self) -> dict[Token, int]:
        return {s: i for i, s in enumerate(self.tokens)}

    def id_of(self, token: Token) -> int:
        return self._index[token]

    def token_of(self, state: int) -> Token:
        return self.tokens[state]

    def zone_state(self, first: int, second: int, mode: str) -> int:
        return self._index[ZoneCell(int(first), int(second), mode)]

    @property
    def blank(self) -> int:
        return self._index[BLANK]

    @property
    def blank_plus(self) -> int:
        return self._index[BLANK_PLUS]

    @property
    def error(self) -> int:
        return self._index[ERROR]


def _token_name(inner: CellularAutomaton, token: Token) -> str:
    if isinstance(token, ZoneCell):
        names = inner.alphabet
        return f"({names.name_of(token.first)},{names.name_of(token.second)},{token.mode})"
    if token == BLANK:
        return Config.BLANK_STATE
    if token == BLANK_PLUS:
        return f"{Config.BLANK_STATE}+"
    return token


def szone_tokens(q: int) -> tuple[Token, ...]:
    cells = [ZoneCell(x, y, d) for x, y in itertools.product(range(q), repeat=2) for d in MODES]
    return (BLANK, BLANK_PLUS, ERROR, *cells)


def _build(inner: CellularAutomaton, spreading: Optional[int], name: str) -> SZoneRule:
    logger.info("=" * 80)
    logger.info(f"Building {name}: inner rule with {inner.size} states")
    delta = local_map(inner)
    tokens = szone_tokens(inner.size)
    names = tuple(_token_name(inner, s) for s in tokens)
    reserved = {_token_name(inner, s) for s in (BLANK, BLANK_PLUS, ERROR)}
    clash = [s for s in inner.alphabet if s in reserved]
    if len(set(names)) != len(names):
        raise CAError(f"Inner state names {clash} clash with the shrinking-zone alphabet")
    index = {s: i for i, s in enumerate(tokens)}
    try:
        ca = CellularAutomaton.from_ids(
            Alphabet(names),
            Neighborhood.interval(-1, 1),
            lambda ctx: index[zone_rule(delta, tokens[ctx[0]], tokens[ctx[1]], tokens[ctx[2]], spreading)],
            name,
        )
    except Exception as e:
        logger.error(f"Failed to build {name}: {str(e)}")
        raise
    logger.info(f"Built {name}: {ca.size} states")
    logger.info("=" * 80)
    return SZoneRule(ca, inner, tokens, spreading)


def build_szone(inner: CellularAutomaton) -> SZoneRule:
    """Shrinking-zone automaton over R = {b, b+, e} + Q x Q x {<, >, l, r}.

    Raises:
        CAError: If ``inner`` is not 1D with radius at most 1
    """
    return _build(inner, None, f"Z[{inner.name or 'rule'}]")


def build_f2_variant(inner: CellularAutomaton, state: int) -> SZoneRule:
    """Z_F where any zone cell carrying the spreading ``state`` raises ``e`` around it.

    Raises:
        NotSpreadingError: If ``state`` does not spread under ``inner``
    """
    check_spreading(inner, state)
    return _build(inner, int(state), f"Z2[{inner.name or 'rule'}]")
