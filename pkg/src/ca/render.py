"""Space-time diagrams and snapshots as ASCII PGM (P2) images."""
from pathlib import Path

import numpy as np

from src.ca.automaton import CellularAutomaton
from src.ca.configuration import Configuration, Window
from src.ca.dynamics import orbit_window
from src.ca.errors import DimensionMismatchError
from src.utils import get_logger

logger = get_logger(__name__)


def encode_pgm(pixels: np.ndarray, maxval: int) -> str:
    """P2 header, ``width height``, maxval, then one text row per image row."""
    pixels = np.asarray(pixels)
    if pixels.ndim != 2:
        raise ValueError(f"PGM images are 2D, got shape {pixels.shape}")
    height, width = pixels.shape
    rows = "".join(" ".join(str(int(v)) for v in row) + "\n" for row in pixels)
    return f"P2\n{width} {height}\n{maxval}\n{rows}"


def _maxval(ca: CellularAutomaton) -> int:
    return max(ca.size - 1, 1)


def orbit_image(ca: CellularAutomaton, c: Configuration, window: Window, steps: int) -> str:
    """1D orbit: row t holds F^t(c) on the window."""
    if c.dimension != 1:
        raise DimensionMismatchError("Orbit images need a 1D configuration")
    return encode_pgm(orbit_window(ca, c, window, steps), _maxval(ca))


def snapshot_image(ca: CellularAutomaton, c: Configuration, window: Window) -> str:
    """2D snapshot: row index is the second coordinate, column index the first."""
    if c.dimension != 2:
        raise DimensionMismatchError("Snapshots need a 2D configuration")
    return encode_pgm(c.window(window).T, _maxval(ca))


def write_pgm(path: Path, image: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(image)
        logger.info(f"Image written to {path}")
        return path
    except Exception as e:
        logger.error(f"Failed to write image {path}: {str(e)}")
        raise
