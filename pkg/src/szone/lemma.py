"""Seeded working zones and the round-trip timing check."""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.ca import CAError, Configuration, Window, check_dimension, iterate, orbit_window
from src.szone.construction import (
    BLANK,
    BLANK_PLUS,
    ERROR,
    MOVE_RIGHT,
    RIGHT_OF_HEAD,
    SZoneRule,
    ZoneCell,
)
from src.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LambdaInput:
    """Zone on [-n, n] holding (c, c') with the head at -n, blank elsewhere."""

    n: int
    c: Configuration
    c_prime: Configuration
    realized: Configuration


def _lambda_cells(szone: SZoneRule, n: int, c: Configuration, c_prime: Configuration) -> dict[tuple[int], int]:
    cells = {}
    for z in range(-n, n + 1):
        mode = MOVE_RIGHT if z == -n else RIGHT_OF_HEAD
        cells[(z,)] = szone.zone_state(c.value_at((z,)), c_prime.value_at((z,)), mode)
    return cells


def make_lambda(
    szone: SZoneRule,
    n: int,
    c: Configuration,
    c_prime: Optional[Configuration] = None,
) -> LambdaInput:
    """Build the seeded zone for inner configurations ``c`` and ``c_prime`` (default ``c``).

    Raises:
        CAError: If ``n < 1`` or a configuration is not 1D
    """
    if n < 1:
        raise CAError(f"Zone half-width must be at least 1, got {n}")
    c_prime = c if c_prime is None else c_prime
    check_dimension(szone.inner, c.dimension)
    check_dimension(szone.inner, c_prime.dimension)
    realized = Configuration.from_cells(1, szone.blank, _lambda_cells(szone, n, c, c_prime))
    return LambdaInput(n, c, c_prime, realized)


def round_trip_time(n: int, t: int) -> int:
    """Steps for ``t`` passes starting from a zone of half-width ``n``."""
    return sum(4 * i + 1 for i in range(n - t + 1, n + 1))


@dataclass(frozen=True)
class Lemma1Report:
    n: int
    t: int
    steps: int
    mismatches: list[tuple[int, str, str]] = field(default_factory=list)
    form_violations: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.form_violations


def _layer_matches(token, images: np.ndarray, z: int) -> bool:
    """Whether a zone cell holds (F^t1(c)_z, F^t2(c)_z) with |t1 - t2| <= 1."""
    firsts = np.flatnonzero(images[:, z] == token.first)
    seconds = np.flatnonzero(images[:, z] == token.second)
    return any(abs(int(a) - int(b)) <= 1 for a in firsts for b in seconds)


def verify_lemma1(szone: SZoneRule, c: Configuration, n: int, t: int) -> Lemma1Report:
    """Check that ``t`` passes over the zone seeded by ``c`` compute ``t`` steps of the inner rule.

    After ``round_trip_time(n, t)`` steps the cells |z| <= n - t must equal the
    seeded zone of half-width ``n - t`` over (F^t(c), F^(t-1)(c)), and at
    every earlier time each cell |z| < n is blank or holds two inner
    generations at most one apart.

    Raises:
        CAError: Unless ``n >= t >= 1``
    """
    if not n >= t >= 1:
        raise CAError(f"Need n >= t >= 1, got n={n}, t={t}")
    logger.info("=" * 80)
    logger.info(f"Checking {t} passes of {szone.ca.name} from half-width {n}")
    steps = round_trip_time(n, t)
    seeded = make_lambda(szone, n, c)
    window = Window.interval(-n, n)
    try:
        orbit = orbit_window(szone.ca, seeded.realized, window, steps)
    except Exception as e:
        logger.error(f"Failed to simulate {szone.ca.name}: {str(e)}")
        raise
    generations = [iterate(szone.inner, c, j) for j in range(t + 1)]
    images = np.stack([g.window(window) for g in generations])
    names = szone.ca.alphabet

    form_violations = []
    for time, row in enumerate(orbit):
        for z in range(1, 2 * n):
            token = szone.token_of(int(row[z]))
            if token in (BLANK, BLANK_PLUS):
                continue
            if token == ERROR or not _layer_matches(token, images, z):
                form_violations.append((time, z - n, names.name_of(int(row[z]))))

    m = n - t
    expected = {z: szone.zone_state(generations[t].value_at((z,)), generations[t - 1].value_at((z,)),
                                    MOVE_RIGHT if z == -m else RIGHT_OF_HEAD)
                for z in range(-m, m + 1)}
    mismatches = [
        (z, names.name_of(q), names.name_of(int(orbit[-1][z + n])))
        for z, q in expected.items()
        if int(orbit[-1][z + n]) != q
    ]
    report = Lemma1Report(n, t, steps, mismatches, form_violations)
    logger.info(f"{steps} steps: {len(mismatches)} mismatches, {len(form_violations)} malformed cells")
    logger.info("=" * 80)
    return report


def center_changes(szone: SZoneRule, n: int, c: Configuration, horizon: Optional[int] = None) -> int:
    """Number of state changes of cell 0 while the zone seeded by ``c`` collapses."""
    horizon = round_trip_time(n, n) + 1 if horizon is None else horizon
    column = orbit_window(szone.ca, make_lambda(szone, n, c).realized, Window.interval(0, 0), horizon)[:, 0]
    return int(np.count_nonzero(column[1:] != column[:-1]))


def zone_widths(szone: SZoneRule, row: np.ndarray) -> list[int]:
    """Lengths of the maximal runs of zone cells in a window row."""
    widths, run = [], 0
    for q in row:
        if isinstance(szone.token_of(int(q)), ZoneCell):
            run += 1
        elif run:
            widths.append(run)
            run = 0
    if run:
        widths.append(run)
    return widths
