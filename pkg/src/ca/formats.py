"""Text formats for rules, configurations and patterns.

All formats share the same lexical rules: a token starting with ``#`` starts a
comment, blank lines are ignored, tokens are whitespace separated and
coordinates are comma-separated integers.
"""
import itertools
from pathlib import Path
from typing import Any, Iterator, Mapping, Optional, Union

import numpy as np

from src.ca.alphabet import Alphabet, Neighborhood, Position
from src.ca.automaton import STATE_DTYPE, CellularAutomaton
from src.ca.configuration import (
    Configuration,
    Pattern,
    PeriodicBackground,
    SplitBackground,
    UniformBackground,
)
from src.ca.errors import CAError, FormatError
from src.utils import get_logger

logger = get_logger(__name__)


def tokenize(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line number, tokens)`` for every non-empty line."""
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = []
        for token in line.split():
            if token.startswith("#"):
                break
            tokens.append(token)
        if tokens:
            yield number, tokens


def parse_coords(token: str, line: Optional[int] = None, dimension: Optional[int] = None) -> Position:
    try:
        position = tuple(int(x) for x in token.split(","))
    except ValueError:
        raise FormatError(f"Invalid coordinates {token!r}", line) from None
    if dimension is not None and len(position) != dimension:
        raise FormatError(f"Coordinates {token!r} are not {dimension}-dimensional", line)
    return position


def format_coords(position: Position) -> str:
    return ",".join(str(x) for x in position)


def _header(header: Optional[Mapping[str, Any]]) -> str:
    if not header:
        return ""
    return "".join(f"# {key}: {value}\n" for key, value in header.items())


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"Invalid {what} {token!r}", line) from None


def _state(alphabet: Alphabet, name: str, line: int) -> int:
    if name not in alphabet:
        raise FormatError(f"Unknown state {name!r}", line)
    return alphabet.id_of(name)


def _load(path: Path) -> str:
    try:
        return Path(path).read_text()
    except Exception as e:
        logger.error(f"Failed to read {path}: {str(e)}")
        raise


def _with_path(error: FormatError, path: Path) -> FormatError:
    return FormatError(error.message, error.line, path)


# Rule files

def parse_rule(text: str) -> CellularAutomaton:
    """Parse a rule file.

    Raises:
        FormatError: On unknown directives, unknown states, wrong arity,
            duplicate or missing entries
    """
    name = ""
    dimension = None
    alphabet = None
    neighborhood = None
    builtin = None
    entries: dict[tuple[int, ...], int] = {}

    for line, tokens in tokenize(text):
        directive, args = tokens[0], tokens[1:]
        if directive == "name":
            name = " ".join(args)
        elif directive == "dim":
            if len(args) != 1:
                raise FormatError("dim takes one integer", line)
            dimension = _int(args[0], line, "dimension")
        elif directive == "alphabet":
            try:
                alphabet = Alphabet(tuple(args))
            except CAError as e:
                raise FormatError(str(e), line) from None
        elif directive == "neighborhood":
            try:
                neighborhood = Neighborhood(tuple(parse_coords(a, line, dimension) for a in args), dimension or 0)
            except FormatError:
                raise
            except CAError as e:
                raise FormatError(str(e), line) from None
        elif directive == "builtin":
            if len(args) != 1:
                raise FormatError("builtin takes one zoo name", line)
            builtin = (args[0], line)
        elif directive == "entry":
            if alphabet is None or neighborhood is None:
                raise FormatError("entry before alphabet and neighborhood", line)
            if len(args) != len(neighborhood) + 2 or args[-2] != "->":
                raise FormatError(f"entry needs {len(neighborhood)} states, '->' and an output", line)
            key = tuple(_state(alphabet, s, line) for s in args[:-2])
            if key in entries:
                raise FormatError(f"Duplicate entry for {' '.join(args[:-2])}", line)
            entries[key] = _state(alphabet, args[-1], line)
        else:
            raise FormatError(f"Unknown directive {directive!r}", line)

    if builtin is not None:
        return _builtin_rule(builtin, name, dimension, alphabet, neighborhood, entries)

    if dimension is None or alphabet is None or neighborhood is None:
        raise FormatError("Rule file needs dim, alphabet and neighborhood lines")
    expected = alphabet.size ** len(neighborhood)
    if len(entries) != expected:
        missing = next(
            key for key in itertools.product(range(alphabet.size), repeat=len(neighborhood))
            if key not in entries
        )
        raise FormatError(
            f"{expected - len(entries)} missing entries, first: {' '.join(alphabet.names(missing))}"
        )
    table = np.zeros((alphabet.size,) * len(neighborhood), dtype=STATE_DTYPE)
    for key, out in entries.items():
        table[key] = out
    return CellularAutomaton(alphabet, neighborhood, table, name)


def _builtin_rule(builtin, name, dimension, alphabet, neighborhood, entries) -> CellularAutomaton:
    from src.zoo.registry import build_named

    zoo_name, line = builtin
    if entries:
        raise FormatError("builtin rules cannot also list entries", line)
    try:
        ca = build_named(zoo_name)
    except KeyError:
        raise FormatError(f"Unknown zoo rule {zoo_name!r}", line) from None
    if dimension is not None and dimension != ca.dimension:
        raise FormatError(f"dim {dimension} does not match builtin {zoo_name} ({ca.dimension})", line)
    if alphabet is not None and alphabet != ca.alphabet:
        raise FormatError(f"alphabet does not match builtin {zoo_name}", line)
    if neighborhood is not None and neighborhood != ca.neighborhood:
        raise FormatError(f"neighborhood does not match builtin {zoo_name}", line)
    return ca.renamed(name) if name else ca


def format_rule(ca: CellularAutomaton, header: Optional[Mapping[str, Any]] = None) -> str:
    """Render a rule file with every entry listed in lexicographic id order."""
    lines = [_header(header)]
    if ca.name:
        lines.append(f"name {ca.name}\n")
    lines.append(f"dim {ca.dimension}\n")
    lines.append(f"alphabet {' '.join(ca.alphabet.symbols)}\n")
    lines.append(f"neighborhood {' '.join(format_coords(v) for v in ca.neighborhood.offsets)}\n")
    symbols = ca.alphabet.symbols
    for key in itertools.product(range(ca.size), repeat=len(ca.neighborhood)):
        context = " ".join(symbols[s] for s in key)
        lines.append(f"entry {context} -> {symbols[ca.table[key]]}\n")
    return "".join(lines)


def load_rule(path: Path) -> CellularAutomaton:
    try:
        return parse_rule(_load(path))
    except FormatError as e:
        raise _with_path(e, path) from None


def save_rule(path: Path, ca: CellularAutomaton, header: Optional[Mapping[str, Any]] = None) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_rule(ca, header))
        logger.info(f"Rule {ca.name or 'automaton'} written to {path}")
        return path
    except Exception as e:
        logger.error(f"Failed to write rule {path}: {str(e)}")
        raise


# Configuration files

def parse_configuration(text: str, alphabet: Alphabet) -> Configuration:
    dimension = None
    background = None
    cells: dict[Position, int] = {}
    for line, tokens in tokenize(text):
        directive, args = tokens[0], tokens[1:]
        if directive == "dim":
            if len(args) != 1:
                raise FormatError("dim takes one integer", line)
            dimension = _int(args[0], line, "dimension")
        elif directive == "background":
            if len(args) != 1:
                raise FormatError("background takes one state", line)
            background = UniformBackground(_state(alphabet, args[0], line))
        elif directive == "background-periodic":
            if dimension is None or len(args) < 2:
                raise FormatError("background-periodic needs dim, periods and a block", line)
            periods = parse_coords(args[0], line, dimension)
            block = [_state(alphabet, s, line) for s in args[1:]]
            if any(p < 1 for p in periods) or len(block) != int(np.prod(periods)):
                raise FormatError(f"Block of {len(block)} states does not fill periods {args[0]}", line)
            background = PeriodicBackground(np.array(block).reshape(periods))
        elif directive == "background-split":
            if dimension != 1 or len(args) != 3:
                raise FormatError("background-split needs dim 1, a cut and two states", line)
            background = SplitBackground(
                _int(args[0], line, "cut"), _state(alphabet, args[1], line), _state(alphabet, args[2], line)
            )
        elif directive == "cell":
            if dimension is None or len(args) != 2:
                raise FormatError("cell needs dim, coordinates and a state", line)
            position = parse_coords(args[0], line, dimension)
            if position in cells:
                raise FormatError(f"Duplicate cell {args[0]}", line)
            cells[position] = _state(alphabet, args[1], line)
        else:
            raise FormatError(f"Unknown directive {directive!r}", line)
    if dimension is None or background is None:
        raise FormatError("Configuration file needs dim and background lines")
    return Configuration(dimension, background, cells)


def format_configuration(
    c: Configuration,
    alphabet: Alphabet,
    header: Optional[Mapping[str, Any]] = None,
) -> str:
    names = alphabet.symbols
    lines = [_header(header), f"dim {c.dimension}\n"]
    background = c.background
    if isinstance(background, UniformBackground):
        lines.append(f"background {names[background.state]}\n")
    elif isinstance(background, PeriodicBackground):
        block = " ".join(names[q] for q in background.block.ravel())
        lines.append(f"background-periodic {format_coords(background.periods)} {block}\n")
    else:
        lines.append(f"background-split {background.cut} {names[background.left]} {names[background.right]}\n")
    for position, state in c.overrides.items():
        lines.append(f"cell {format_coords(position)} {names[state]}\n")
    return "".join(lines)


def load_configuration(path: Path, alphabet: Alphabet) -> Configuration:
    try:
        return parse_configuration(_load(path), alphabet)
    except FormatError as e:
        raise _with_path(e, path) from None


def save_configuration(
    path: Path,
    c: Configuration,
    alphabet: Alphabet,
    header: Optional[Mapping[str, Any]] = None,
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_configuration(c, alphabet, header))
    return path


# Pattern files

def parse_pattern(text: str, alphabet: Alphabet) -> tuple[Pattern, Optional[int]]:
    """Parse a pattern file into the pattern and its optional target state."""
    dimension = None
    radius = None
    values = None
    target = None
    for line, tokens in tokenize(text):
        directive, args = tokens[0], tokens[1:]
        if directive == "dim":
            dimension = _int(args[0], line, "dimension") if len(args) == 1 else None
            if dimension is None:
                raise FormatError("dim takes one integer", line)
        elif directive == "radius":
            radius = _int(args[0], line, "radius") if len(args) == 1 else None
            if radius is None or radius < 0:
                raise FormatError("radius takes one non-negative integer", line)
        elif directive == "values":
            values = ([_state(alphabet, s, line) for s in args], line)
        elif directive == "target":
            if len(args) != 1:
                raise FormatError("target takes one state", line)
            target = _state(alphabet, args[0], line)
        else:
            raise FormatError(f"Unknown directive {directive!r}", line)
    if dimension is None or radius is None or values is None:
        raise FormatError("Pattern file needs dim, radius and values lines")
    states, line = values
    try:
        return Pattern.from_values(dimension, radius, states), target
    except CAError as e:
        raise FormatError(str(e), line) from None


def format_pattern(
    u: Pattern,
    alphabet: Alphabet,
    target: Optional[int] = None,
    header: Optional[Mapping[str, Any]] = None,
) -> str:
    names = alphabet.symbols
    lines = [
        _header(header),
        f"dim {u.dimension}\n",
        f"radius {u.radius}\n",
        f"values {' '.join(names[q] for q in u.values.ravel())}\n",
    ]
    if target is not None:
        lines.append(f"target {names[target]}\n")
    return "".join(lines)


def load_pattern(path: Path, alphabet: Alphabet) -> tuple[Pattern, Optional[int]]:
    try:
        return parse_pattern(_load(path), alphabet)
    except FormatError as e:
        raise _with_path(e, path) from None


def save_pattern(
    path: Path,
    u: Pattern,
    alphabet: Alphabet,
    target: Optional[int] = None,
    header: Optional[Mapping[str, Any]] = None,
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_pattern(u, alphabet, target, header))
    return path


def load_rule_or_builtin(source: Union[str, Path]) -> CellularAutomaton:
    """A rule file path, or the name of a zoo rule."""
    path = Path(source)
    if path.exists():
        return load_rule(path)
    from src.zoo.registry import build_named

    try:
        return build_named(str(source))
    except KeyError:
        raise FormatError(f"{source} is neither a rule file nor a zoo rule") from None
