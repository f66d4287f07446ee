"""A rule of maximal prediction communication cost and fooling-set checks."""
import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from src.ca import Alphabet, CAError, CellularAutomaton, Neighborhood, Pattern
from src.ca.automaton import tabulate
from src.commproto.instances import SplitInstance, first_coordinate
from src.predict.instance import predict_naive
from src.utils import get_logger

logger = get_logger(__name__)

# State id = 2 * kind + bit.
MOVE_LEFT_KIND, MOVE_RIGHT_KIND, TEST_KIND = 0, 1, 2
HIGHCC_STATES = ("<0", "<1", ">0", ">1", "T0", "T1")
T0 = 2 * TEST_KIND
T1 = 2 * TEST_KIND + 1


def build_highcc_rule(d: int) -> CellularAutomaton:
    """Mirror-comparison rule on B(1) over {<, >, T} x {0, 1}.

    Right-moving cells copy their left neighbor and left-moving cells their
    right neighbor. A test cell becomes ``T0`` if ``T0`` is in its
    neighborhood or the bits on both sides along the first axis differ, and
    ``T1`` otherwise.
    """
    if d < 1:
        raise CAError(f"Dimension must be at least 1, got {d}")
    neighborhood = Neighborhood.ball(d, 1)
    unit = (1,) + (0,) * (d - 1)
    center = neighborhood.center_index
    before = neighborhood.index_of(tuple(-x for x in unit))
    after = neighborhood.index_of(unit)

    def rule(ctx):
        kind = ctx[center] // 2
        tested = np.logical_or.reduce(np.broadcast_arrays(*[q == T0 for q in ctx]))
        tested = tested | (ctx[before] % 2 != ctx[after] % 2)
        judged = np.where(tested, T0, T1)
        return np.where(kind == MOVE_RIGHT_KIND, ctx[before], np.where(kind == MOVE_LEFT_KIND, ctx[after], judged))

    return tabulate(Alphabet(HIGHCC_STATES), neighborhood, rule, f"highcc{d}")


def correct_pattern(bits: np.ndarray) -> Pattern:
    """Pattern moving ``bits`` towards the hyperplane: ``>`` before it, ``<`` after it, ``T1`` on it."""
    bits = np.asarray(bits, dtype=np.int32)
    radius = bits.shape[0] // 2
    pi = np.broadcast_to(first_coordinate(bits.shape, radius), bits.shape)
    values = np.where(pi < 0, 2 * MOVE_RIGHT_KIND + bits, np.where(pi > 0, 2 * MOVE_LEFT_KIND + bits, T1))
    return Pattern(values)


def mirror_candidates(d: int, n: int) -> list[SplitInstance]:
    """Inputs for ``n`` steps whose bits within B(n // 2) mirror each other across the split.

    One candidate per assignment of Alice's bits there; all other bits are 0.
    """
    m = n // 2
    shape = (2 * n + 1,) * d
    free = [
        cell for cell in itertools.product(range(-m, m + 1), repeat=d)
        if cell[0] < 0
    ]
    candidates = []
    for assignment in itertools.product((0, 1), repeat=len(free)):
        bits = np.zeros(shape, dtype=np.int32)
        for cell, bit in zip(free, assignment):
            bits[tuple(x + n for x in cell)] = bit
            bits[tuple(x + n for x in (-cell[0],) + cell[1:])] = bit
        candidates.append(SplitInstance.from_pattern(n, correct_pattern(bits)))
    return candidates


@dataclass(frozen=True)
class FoolingSet:
    size: int
    value: int

    @property
    def lower_bound_bits(self) -> float:
        """Deterministic communication cost implied by the set."""
        return math.log2(self.size)


@dataclass(frozen=True)
class FoolingCounterexample:
    i: int
    j: int
    crossed: tuple[int, int]
    value: int


FoolingResult = Union[FoolingSet, FoolingCounterexample]


def check_fooling_set(ca: CellularAutomaton, n: int, candidates: Sequence[SplitInstance]) -> FoolingResult:
    """Check that the candidates form a fooling set for prediction in ``n`` steps.

    Every candidate must give the same answer, and for i != j one of the
    crossed inputs (a_i, b_j), (a_j, b_i) must give another one.

    Returns:
        The verified set, or the first pair of candidates that breaks it
    """
    if not candidates:
        raise CAError("A fooling set needs at least one candidate")
    keys = {(c.alice.tobytes(), c.bob.tobytes()) for c in candidates}
    if len(keys) != len(candidates):
        raise CAError("Fooling-set candidates must be pairwise distinct")
    logger.info(f"Checking a fooling set of {len(candidates)} inputs for {ca.name or 'automaton'}, n={n}")

    def answer(i: int, j: int) -> int:
        split = SplitInstance(n, candidates[i].alice, candidates[j].bob)
        return predict_naive(ca, split.prediction())

    value = answer(0, 0)
    for i in range(1, len(candidates)):
        diagonal = answer(i, i)
        if diagonal != value:
            return FoolingCounterexample(0, i, (value, diagonal), value)
    for i, j in itertools.combinations(range(len(candidates)), 2):
        crossed = (answer(i, j), answer(j, i))
        if crossed == (value, value):
            logger.debug(f"Candidates {i} and {j} are not fooled apart")
            return FoolingCounterexample(i, j, crossed, value)
    return FoolingSet(len(candidates), value)
