"""Catalogue of named rules and the class each one is expected to fall in."""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from src.ca import CAError, CellularAutomaton, Configuration, PeriodicBackground, Trace, Window, trace
from src.ca.formats import save_rule
from src.classify.changes import ChangeProfile, Freezing, change_profile, check_freezing
from src.classify.spreading import lift_spreading_product
from src.commproto.highcc import build_highcc_rule
from src.config import Config
from src.utils import get_logger
from src.zoo import rules
from src.zoo.atam import atam_to_ca, toy_system

logger = get_logger(__name__)

FREEZING = "freezing"
BOUNDED_CHANGE = "bounded-change"
CONVERGENT = "convergent"
NONE = "none"

SAMPLE_COUNT = 8
SAMPLE_RADIUS = 3


@dataclass(frozen=True)
class ZooEntry:
    name: str
    builder: Callable[[], CellularAutomaton] = field(repr=False)
    expected_class: str
    description: str
    params: dict[str, Any] = field(default_factory=dict)

    def build(self) -> CellularAutomaton:
        """Build the rule and check it against its expected class.

        Freezing and non-freezing entries are decided from the table.
        Bounded-change and convergent entries are sampled: every seeded orbit
        must end on a constant tail around the origin within the horizon.

        Raises:
            CAError: If the rule falls outside its expected class
        """
        ca = self.builder().renamed(self.name)
        freezing = isinstance(check_freezing(ca), Freezing)
        if self.expected_class == FREEZING and not freezing:
            raise CAError(f"Zoo rule {self.name} is expected to be freezing")
        if self.expected_class == NONE and freezing:
            raise CAError(f"Zoo rule {self.name} is expected not to be freezing")
        if self.expected_class == BOUNDED_CHANGE:
            check_bounded_change_samples(ca)
        if self.expected_class == CONVERGENT:
            check_convergent_samples(ca)
        logger.debug(f"Built zoo rule {self.name}: {ca.size} states, freezing={freezing}")
        return ca


def sample_configurations(
    ca: CellularAutomaton,
    periodic: bool = False,
    seed: Optional[int] = None,
) -> list[Configuration]:
    """Seeded random patterns of radius SAMPLE_RADIUS around the origin.

    Backgrounds are uniform, or every other one periodic with a non-constant
    block when ``periodic`` is set.
    """
    rng = np.random.default_rng(Config.DEFAULT_SEED if seed is None else seed)
    d = ca.dimension
    shape = (2 * SAMPLE_RADIUS + 1,) * d
    samples = []
    for index in range(SAMPLE_COUNT):
        if periodic and index % 2 and ca.size > 1:
            block = rng.integers(0, ca.size, (int(rng.integers(2, 5)),) * d)
            block.flat[0] = (block.flat[1] + 1) % ca.size
            background = PeriodicBackground(block)
        else:
            background = int(rng.integers(ca.size))
        samples.append(Configuration.from_array(rng.integers(0, ca.size, shape), (-SAMPLE_RADIUS,) * d, background))
    return samples


def check_bounded_change_samples(ca: CellularAutomaton, horizon: Optional[int] = None) -> ChangeProfile:
    """Raises CAError when a sampled orbit still changes near the origin at the horizon."""
    horizon = Config.DEFAULT_HORIZON if horizon is None else horizon
    window = Window.ball(ca.dimension, SAMPLE_RADIUS)
    profile = change_profile(ca, sample_configurations(ca, periodic=True), window, horizon)
    if not profile.settled:
        raise CAError(
            f"Zoo rule {ca.name} is expected to have bounded change, but "
            f"{profile.unsettled_samples} of {profile.sample_count} sampled orbits still change at step {horizon}"
        )
    logger.debug(f"{ca.name}: at most {profile.max_changes_observed} changes over {profile.sample_count} samples")
    return profile


def check_convergent_samples(ca: CellularAutomaton, horizon: Optional[int] = None) -> list[Trace]:
    """Raises CAError when a sampled orbit has no confirmed constant tail near the origin."""
    horizon = Config.DEFAULT_HORIZON if horizon is None else horizon
    base = list(Window.ball(ca.dimension, SAMPLE_RADIUS).cells())
    traces = []
    for index, c in enumerate(sample_configurations(ca)):
        observed = trace(ca, c, base, horizon)
        settled_at = observed.eventually_constant_at
        if settled_at is None or observed.horizon - settled_at < Config.DEFAULT_CONFIRM_TAIL:
            raise CAError(
                f"Zoo rule {ca.name} is expected to be convergent, but sample {index} has not converged by step {horizon}"
            )
        traces.append(observed)
    logger.debug(f"{ca.name}: {len(traces)} sampled orbits converge by step {max(t.eventually_constant_at for t in traces)}")
    return traces


def _szone(inner: Callable[[], CellularAutomaton]) -> Callable[[], CellularAutomaton]:
    def build() -> CellularAutomaton:
        from src.szone import build_szone

        return build_szone(inner()).ca

    return build


def _minsky(name: str) -> Callable[[], CellularAutomaton]:
    def build() -> CellularAutomaton:
        from src.minsky import builtin_machine, compile_minsky

        return compile_minsky(builtin_machine(name)).ca

    return build


_ENTRIES = [
    ZooEntry("identity", rules.identity, FREEZING, "Every cell keeps its state"),
    ZooEntry("constant-0", rules.constant, FREEZING, "Every cell becomes 0", {"state": "0"}),
    ZooEntry("shift", rules.shift, NONE, "One-way shift to the right"),
    ZooEntry("max", rules.max_rule, FREEZING, "Maximum over {-1, 0}"),
    ZooEntry("max2", lambda: rules.max_rule(two_way=True), FREEZING, "Maximum over {-1, 0, 1}"),
    ZooEntry("nonfreezing", rules.nonfreezing_example, BOUNDED_CHANGE, "Nilpotent rule that is not freezing"),
    ZooEntry("ulam", rules.ulam, FREEZING, "Ulam growth on the 2D von Neumann neighborhood", {"dimension": 2}),
    ZooEntry("ulam1d", rules.ulam1d, FREEZING, "Ulam growth in 1D", {"dimension": 1}),
    ZooEntry("threshold2", rules.threshold_growth, FREEZING, "Bootstrap growth, threshold 2", {"threshold": 2}),
    ZooEntry("life", rules.game_of_life, NONE, "Game of life (B3/S23)"),
    ZooEntry("life-without-death", rules.life_without_death, FREEZING, "Game of life where live cells never die"),
    ZooEntry("sir", rules.sir, FREEZING, "Deterministic SIR epidemic", {"threshold": 1}),
    ZooEntry("vertical-min", rules.vertical_min, FREEZING, "Minimum with the cell above"),
    ZooEntry("lift-max", lambda: rules.line_lift(rules.max_rule()), FREEZING, "2D row-by-row lift of max"),
    ZooEntry("ulam1d-x-max", lambda: rules.product(rules.ulam1d(), rules.max_rule()), FREEZING, "Product of ulam1d and max"),
    ZooEntry("blink-max", lambda: lift_spreading_product(rules.max_rule(), 1), NONE, "max with a blinking bit"),
    ZooEntry("atam-toy", lambda: atam_to_ca(toy_system()), FREEZING, "Four-tile directed tile system"),
    ZooEntry("minsky-bounce", _minsky("bounce"), FREEZING, "Compiled three-step counter machine", {"machine": "bounce"}),
    ZooEntry("minsky-loop", _minsky("loop"), FREEZING, "Compiled non-halting counter machine", {"machine": "loop"}),
    ZooEntry("szone-max2", _szone(lambda: rules.max_rule(two_way=True)), CONVERGENT, "Shrinking zones around max2"),
    ZooEntry("szone-ulam1d", _szone(rules.ulam1d), CONVERGENT, "Shrinking zones around ulam1d"),
    ZooEntry("highcc1", lambda: build_highcc_rule(1), NONE, "1D mirror comparison of maximal communication cost"),
]

ZOO: dict[str, ZooEntry] = {entry.name: entry for entry in _ENTRIES}


def list_entries() -> list[ZooEntry]:
    return list(ZOO.values())


def get_entry(name: str) -> ZooEntry:
    """Raises KeyError for unknown names."""
    return ZOO[name]


def build_named(name: str) -> CellularAutomaton:
    """Build a zoo rule by name.

    Raises:
        KeyError: If no entry has that name
    """
    return get_entry(name).build()


def emit(name: str, path: Optional[Path] = None, header: Optional[dict[str, Any]] = None) -> Path:
    """Write a zoo rule as a rule file listing every entry."""
    ca = build_named(name)
    path = path if path is not None else Config.OUTPUT_DIR / f"{name}.rule"
    return save_rule(path, ca, header)
