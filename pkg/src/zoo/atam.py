"""Abstract tile assembly systems and their freezing cellular automaton."""
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from src.ca import Alphabet, CellularAutomaton, Configuration, FormatError, Neighborhood, UniformBackground
from src.ca.formats import tokenize
from src.utils import get_logger

logger = get_logger(__name__)

EMPTY = "eps"

# Side name, offset of the neighbor on that side, side of the neighbor facing back.
SIDES = (
    ("north", (0, 1), "south"),
    ("east", (1, 0), "west"),
    ("south", (0, -1), "north"),
    ("west", (-1, 0), "east"),
)


@dataclass(frozen=True)
class Glue:
    color: str
    strength: int

    def __str__(self) -> str:
        return f"{self.color}:{self.strength}"


@dataclass(frozen=True)
class Tile:
    name: str
    north: Optional[Glue] = None
    east: Optional[Glue] = None
    south: Optional[Glue] = None
    west: Optional[Glue] = None

    def glue(self, side: str) -> Optional[Glue]:
        return getattr(self, side)


@dataclass(frozen=True)
class AtamSystem:
    """Tiles, a seed tile and a temperature.

    ``order`` lists tile names from minimum to maximum; the automaton picks the
    minimum attachable tile and the empty state is above every tile.
    """

    tiles: tuple[Tile, ...]
    seed: str
    temperature: int
    order: tuple[str, ...] = ()
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        by_name = {t.name: t for t in self.tiles}
        if len(by_name) != len(self.tiles):
            raise ValueError("Duplicate tile names")
        order = tuple(self.order) or tuple(by_name)
        if sorted(order) != sorted(by_name):
            raise ValueError(f"Tile order {order} is not a permutation of the tile names")
        if self.seed not in by_name:
            raise ValueError(f"Unknown seed tile {self.seed!r}")
        if EMPTY in by_name:
            raise ValueError(f"Tile name {EMPTY!r} is reserved for the empty cell")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_by_name", by_name)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.order + (EMPTY,))

    @property
    def empty(self) -> int:
        return len(self.order)

    def tile(self, state: int) -> Optional[Tile]:
        return None if state == self.empty else self._by_name[self.order[state]]

    def bond(self, neighbors: dict[str, int], state: int) -> int:
        """Total strength of the glues of tile ``state`` matched by its neighbors."""
        tile = self.tile(state)
        total = 0
        for side, _, facing in SIDES:
            neighbor = self.tile(neighbors[side])
            own = tile.glue(side)
            if own is None or neighbor is None:
                continue
            other = neighbor.glue(facing)
            if other is not None and other.color == own.color:
                total += own.strength
        return total

    def attachable(self, neighbors: dict[str, int], state: int) -> bool:
        """The compatibility relation R: the empty state always, a tile when its bond reaches the temperature."""
        return state == self.empty or self.bond(neighbors, state) >= self.temperature

    def seed_configuration(self) -> Configuration:
        return Configuration(2, UniformBackground(self.empty), {(0, 0): self.order.index(self.seed)})


def _neighbors(c: Configuration, cell: tuple[int, int]) -> dict[str, int]:
    return {side: c.value_at((cell[0] + dx, cell[1] + dy)) for side, (dx, dy), _ in SIDES}


def atam_step(system: AtamSystem, c: Configuration) -> list[Configuration]:
    """Every configuration reachable by attaching one tile to an empty cell."""
    successors = []
    frontier = sorted({
        (x + dx, y + dy)
        for (x, y) in c.overrides
        for _, (dx, dy), _ in SIDES
        if c.value_at((x + dx, y + dy)) == system.empty
    })
    for cell in frontier:
        neighbors = _neighbors(c, cell)
        for state in range(len(system.order)):
            if system.attachable(neighbors, state):
                successors.append(c.with_cells({cell: state}))
    return successors


def terminal_assemblies(system: AtamSystem, max_assemblies: int = 10000) -> list[Configuration]:
    """Exhaustive closure of ``atam_step`` from the seed; the terminal assemblies found.

    Raises:
        RuntimeError: If more than ``max_assemblies`` assemblies are reachable
    """
    start = system.seed_configuration()
    seen = {start}
    queue = deque([start])
    terminal = []
    while queue:
        c = queue.popleft()
        successors = atam_step(system, c)
        if not successors:
            terminal.append(c)
        for nxt in successors:
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_assemblies:
                    raise RuntimeError(f"More than {max_assemblies} assemblies reachable")
                queue.append(nxt)
    logger.info(f"Assembly closure: {len(seen)} assemblies, {len(terminal)} terminal")
    return terminal


def atam_to_ca(system: AtamSystem) -> CellularAutomaton:
    """Freezing CA: a tile stays, an empty cell takes the minimum attachable tile (or stays empty)."""
    neighborhood = Neighborhood.von_neumann(2, 1, include_center=True)
    positions = {side: neighborhood.index_of(offset) for side, offset, _ in SIDES}
    center = neighborhood.center_index

    def rule(context: tuple[int, ...]) -> int:
        if context[center] != system.empty:
            return context[center]
        neighbors = {side: context[i] for side, i in positions.items()}
        for state in range(len(system.order)):
            if system.attachable(neighbors, state):
                return state
        return system.empty

    return CellularAutomaton.from_ids(system.alphabet, neighborhood, rule, "atam")


def _glue(token: str, line: int) -> Optional[Glue]:
    if token == "-":
        return None
    color, _, strength = token.partition(":")
    try:
        return Glue(color, int(strength))
    except ValueError:
        raise FormatError(f"Invalid glue {token!r}, expected color:strength or -", line) from None


def parse_tiles(text: str) -> AtamSystem:
    """Parse a tile-set file (``temperature``, ``seed``, ``tile``, ``order`` lines)."""
    tiles = []
    seed = None
    temperature = None
    order: Sequence[str] = ()
    for line, tokens in tokenize(text):
        directive, args = tokens[0], tokens[1:]
        if directive == "temperature" and len(args) == 1:
            try:
                temperature = int(args[0])
            except ValueError:
                raise FormatError(f"Invalid temperature {args[0]!r}", line) from None
        elif directive == "seed" and len(args) == 1:
            seed = args[0]
        elif directive == "tile" and len(args) == 5:
            tiles.append(Tile(args[0], *[_glue(g, line) for g in args[1:]]))
        elif directive == "order":
            order = tuple(args)
        else:
            raise FormatError(f"Invalid line {' '.join(tokens)!r}", line)
    if seed is None or temperature is None or not tiles:
        raise FormatError("Tile file needs temperature, seed and tile lines")
    try:
        return AtamSystem(tuple(tiles), seed, temperature, tuple(order))
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_tiles(system: AtamSystem) -> str:
    lines = [f"temperature {system.temperature}\n", f"seed {system.seed}\n"]
    for tile in system.tiles:
        glues = " ".join(str(g) if g is not None else "-" for g in (tile.north, tile.east, tile.south, tile.west))
        lines.append(f"tile {tile.name} {glues}\n")
    lines.append(f"order {' '.join(system.order)}\n")
    return "".join(lines)


def load_tiles(path: Path) -> AtamSystem:
    try:
        return parse_tiles(Path(path).read_text())
    except FormatError as e:
        raise FormatError(e.message, e.line, path) from None


def toy_system() -> AtamSystem:
    """Directed temperature-1 system growing an L of four tiles from the seed."""
    return AtamSystem(
        tiles=(
            Tile("S", north=Glue("c", 1), east=Glue("a", 1)),
            Tile("A", east=Glue("b", 1), west=Glue("a", 1)),
            Tile("B", west=Glue("b", 1)),
            Tile("C", south=Glue("c", 1)),
        ),
        seed="S",
        temperature=1,
    )
