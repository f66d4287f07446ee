"""Two-party protocols for prediction, metered in exchanged bits.

Payload sizes are counted analytically: a state costs ``bits(|Q|)``, a time
counter ``bits(n + 1)`` and each diff-report entry a state, a time and d
coordinates, ``bits(|Q|) + (d + 1) bits(n)``.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from src.ca import Alphabet, CAError, CellularAutomaton, FormatError
from src.ca.formats import tokenize
from src.commproto.instances import UNKNOWN, SplitInstance, bits, first_coordinate
from src.predict.instance import predict_naive
from src.predict.stream import ChangeBoundExceededError
from src.utils import get_logger, write_csv

logger = get_logger(__name__)

ALICE = "alice"
BOB = "bob"

INIT = "init"
COUNTER = "counter"
DIFF_REPORT = "diffReport"
TAGS = (INIT, COUNTER, DIFF_REPORT)

TRIVIAL = "trivial"
DIFFREPORT = "diffreport"


@dataclass(frozen=True)
class Round:
    sender: str
    bits: int
    tag: str
    changes: int = 0


@dataclass(frozen=True)
class Checkpoint:
    """What each party knows right after agreeing on ``time``."""

    time: int
    alice: np.ndarray
    bob: np.ndarray


@dataclass(frozen=True)
class ProtocolTranscript:
    protocol: str
    n: int
    rounds: tuple[Round, ...]
    answer: int
    checkpoints: tuple[Checkpoint, ...] = field(default=(), repr=False)

    @property
    def total_bits(self) -> int:
        return sum(r.bits for r in self.rounds)

    @property
    def init_bits(self) -> int:
        return sum(r.bits for r in self.rounds if r.tag == INIT)

    @property
    def diff_changes(self) -> int:
        return sum(r.changes for r in self.rounds if r.tag == DIFF_REPORT)

    @property
    def diff_bits(self) -> int:
        return sum(r.bits for r in self.rounds if r.tag == DIFF_REPORT)

    @property
    def diff_reports(self) -> int:
        return sum(1 for r in self.rounds if r.tag == DIFF_REPORT)


def run_trivial_protocol(ca: CellularAutomaton, inst: SplitInstance) -> ProtocolTranscript:
    """Alice sends the whole left half; Bob answers."""
    inst.prediction().check(ca)
    payload = inst.alice_cells * bits(ca.size)
    answer = predict_naive(ca, inst.prediction())
    logger.debug(f"Trivial protocol, n={inst.n}: {payload} bits")
    return ProtocolTranscript(TRIVIAL, inst.n, (Round(ALICE, payload, INIT),), answer)


class _Party:
    """One side of the diff-report protocol.

    ``grid`` is the party's knowledge of B(r (n - time)) at its current time:
    its own half, the other party's zone, ``UNKNOWN`` elsewhere.
    """

    def __init__(self, ca: CellularAutomaton, name: str, half: np.ndarray, n: int):
        self.ca = ca
        self.name = name
        self.n = n
        self.grid = half
        self.time = 0

    def _masks(self, shape: tuple[int, ...], radius: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Own half, own zone and the other party's zone."""
        r = self.ca.radius
        pi = np.broadcast_to(first_coordinate(shape, radius), shape)
        alice_zone = (pi >= -r + 1) & (pi <= 0)
        bob_zone = (pi >= 1) & (pi <= r)
        if self.name == ALICE:
            return pi <= 0, alice_zone, bob_zone
        return pi > 0, bob_zone, alice_zone

    @property
    def radius(self) -> int:
        return self.grid.shape[0] // 2

    def zone(self, grid: Optional[np.ndarray] = None) -> np.ndarray:
        grid = self.grid if grid is None else grid
        return self._masks(grid.shape, grid.shape[0] // 2)[1]

    def learn_zone(self, other: np.ndarray) -> None:
        other_zone = self._masks(self.grid.shape, self.radius)[2]
        self.grid = np.where(other_zone, other, self.grid)

    def run(self) -> tuple[list[np.ndarray], Optional[int], list[tuple[tuple[int, ...], int]]]:
        """Simulate assuming the other zone never changes, up to the first change in our zone.

        Returns:
            Grids from the current time on, the time of the change (None when
            the zone stays put until step n) and the changed cells with their
            new states
        """
        r = self.ca.radius
        history = [self.grid]
        grid = self.grid
        for tau in range(self.time, self.n):
            radius = grid.shape[0] // 2 - r
            previous = grid[tuple(slice(r, r + 2 * radius + 1) for _ in range(grid.ndim))]
            nxt = self.ca.apply_partial(grid)
            own, own_zone, other_zone = self._masks(nxt.shape, radius)
            nxt = np.where(other_zone, previous, nxt)
            nxt = np.where(own | other_zone, nxt, UNKNOWN)
            if np.any(nxt[own] == UNKNOWN):
                raise CAError(f"{self.name} lost track of its own half at step {tau + 1}")
            history.append(nxt)
            changed = own_zone & (nxt != previous)
            if changed.any():
                entries = [
                    (tuple(int(i) - radius for i in index), int(nxt[tuple(index)]))
                    for index in np.argwhere(changed)
                ]
                return history, tau + 1, entries
            grid = nxt
        return history, None, []

    def settle(self, history: list[np.ndarray], time: int) -> None:
        """Roll back (or forward) to the grid at ``time``."""
        self.grid = history[time - self.time]
        self.time = time

    def apply_diff(self, entries: list[tuple[tuple[int, ...], int]]) -> None:
        grid = self.grid.copy()
        for position, state in entries:
            grid[tuple(x + self.radius for x in position)] = state
        self.grid = grid


def run_diffreport_protocol(
    ca: CellularAutomaton,
    inst: SplitInstance,
    k: Optional[int],
    record_checkpoints: bool = False,
) -> ProtocolTranscript:
    """Run the diff-report protocol for a ``k``-change rule.

    Both parties first exchange the r columns next to the split. Then each
    simulates its half assuming the other zone is fixed, they exchange the
    time of their first zone change, and whoever changed first sends the
    changed cells. Both restart from the earliest such time.

    Every agreement costs one pair of counter rounds, including the last one
    announcing that no zone changes before step n. A radius-0 rule has empty
    zones, so its transcript is two empty init rounds and that final pair.

    Args:
        ca: Rule, assumed k-change
        inst: Split input
        k: Change bound checked on every cell of the two zones, None to skip the check
        record_checkpoints: Keep both parties' knowledge after every agreement

    Raises:
        ChangeBoundExceededError: If a zone cell changes more than ``k`` times
    """
    inst.prediction().check(ca)
    n, d = inst.n, inst.dimension
    state_bits = bits(ca.size)
    counter_bits = bits(n + 1)
    entry_bits = state_bits + (d + 1) * bits(n)
    logger.info("=" * 80)
    logger.info(f"Diff-report protocol on {ca.name or 'automaton'}, n={n}, k={k}")

    alice = _Party(ca, ALICE, inst.alice, n)
    bob = _Party(ca, BOB, inst.bob, n)
    rounds = [
        Round(ALICE, int(np.count_nonzero(alice.zone())) * state_bits, INIT),
        Round(BOB, int(np.count_nonzero(bob.zone())) * state_bits, INIT),
    ]
    alice.learn_zone(inst.bob)
    bob.learn_zone(inst.alice)
    checkpoints = [Checkpoint(0, alice.grid, bob.grid)] if record_checkpoints else []
    counts: dict[tuple[int, ...], int] = {}

    try:
        while alice.time < n:
            a_history, a_time, a_entries = alice.run()
            b_history, b_time, b_entries = bob.run()
            rounds += [Round(ALICE, counter_bits, COUNTER), Round(BOB, counter_bits, COUNTER)]
            times = [t for t in (a_time, b_time) if t is not None]
            t_m = min(times) if times else n
            alice.settle(a_history, t_m)
            bob.settle(b_history, t_m)
            for sender, receiver, time, entries in ((ALICE, bob, a_time, a_entries), (BOB, alice, b_time, b_entries)):
                if time != t_m:
                    continue
                rounds.append(Round(sender, len(entries) * entry_bits, DIFF_REPORT, len(entries)))
                receiver.apply_diff(entries)
                for position, _ in entries:
                    counts[position] = counts.get(position, 0) + 1
                    if k is not None and counts[position] > k:
                        raise ChangeBoundExceededError(f"Cell {position} changed more than {k} times by step {t_m}")
            logger.debug(f"Agreed on t={t_m} (alice {a_time}, bob {b_time})")
            if record_checkpoints:
                checkpoints.append(Checkpoint(t_m, alice.grid, bob.grid))
    except Exception as e:
        logger.error(f"Failed to run the diff-report protocol: {str(e)}")
        raise

    answer = int(alice.grid[(0,) * d])
    transcript = ProtocolTranscript(DIFFREPORT, n, tuple(rounds), answer, tuple(checkpoints))
    logger.info(f"Answer {ca.alphabet.name_of(answer)}: {transcript.total_bits} bits, {transcript.diff_changes} reported changes")
    logger.info("=" * 80)
    return transcript


def format_transcript(transcript: ProtocolTranscript, alphabet: Alphabet) -> str:
    lines = [f"protocol {transcript.protocol}", f"n {transcript.n}"]
    lines += [f"round {r.sender} {r.bits} {r.tag} {r.changes}" for r in transcript.rounds]
    lines += [f"answer {alphabet.name_of(transcript.answer)}", f"total {transcript.total_bits}"]
    return "\n".join(lines) + "\n"


def parse_transcript(text: str, alphabet: Alphabet) -> ProtocolTranscript:
    """Inverse of :func:`format_transcript`.

    Raises:
        FormatError: On unknown lines, bad values or a total that does not add up
    """
    fields: dict[str, str] = {}
    rounds = []
    total = None
    for line, tokens in tokenize(text):
        key, args = tokens[0], tokens[1:]
        if key == "round":
            if len(args) != 4 or args[0] not in (ALICE, BOB) or args[2] not in TAGS:
                raise FormatError(f"Malformed round {' '.join(args)!r}", line)
            try:
                rounds.append(Round(args[0], int(args[1]), args[2], int(args[3])))
            except ValueError:
                raise FormatError(f"Malformed round {' '.join(args)!r}", line)
        elif key in ("protocol", "n", "answer", "total") and len(args) == 1:
            fields[key] = args[0]
            if key == "total":
                total = line
        else:
            raise FormatError(f"Unexpected line starting with {key!r}", line)
    missing = [key for key in ("protocol", "n", "answer", "total") if key not in fields]
    if missing:
        raise FormatError(f"Transcript misses {', '.join(missing)}")
    if fields["answer"] not in alphabet:
        raise FormatError(f"Unknown answer state {fields['answer']!r}")
    try:
        transcript = ProtocolTranscript(fields["protocol"], int(fields["n"]), tuple(rounds), alphabet.id_of(fields["answer"]))
        declared = int(fields["total"])
    except ValueError as e:
        raise FormatError(str(e), total)
    if transcript.total_bits != declared:
        raise FormatError(f"Rounds add up to {transcript.total_bits} bits, not {declared}", total)
    return transcript


@dataclass(frozen=True)
class CurvePoint:
    n: int
    trivial_bits: int
    diffreport_bits: int
    diff_changes: int
    agree: bool


def protocol_curve(ca: CellularAutomaton, instances: Iterable[SplitInstance], k: int) -> list[CurvePoint]:
    """Bits of both protocols on each instance, with whether their answers agree."""
    points = []
    for inst in instances:
        trivial = run_trivial_protocol(ca, inst)
        diff = run_diffreport_protocol(ca, inst, k)
        points.append(CurvePoint(inst.n, trivial.total_bits, diff.total_bits, diff.diff_changes, trivial.answer == diff.answer))
    return points


def write_curve(path: Path, points: Iterable[CurvePoint]) -> Path:
    rows = ((p.n, p.trivial_bits, p.diffreport_bits, p.diff_changes, "yes" if p.agree else "no") for p in points)
    return write_csv(path, ("n", "trivial_bits", "diffreport_bits", "diff_changes", "agree"), rows)
