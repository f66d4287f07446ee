"""Structured key: value reports and CSV curves shared by the command line."""
import csv
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from src.utils.logger import get_logger

logger = get_logger(__name__)


def _render_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return " ".join(_render_value(v) for v in value)
    if value is None:
        return "-"
    return str(value)


def format_report(fields: Mapping[str, Any]) -> str:
    """Render a mapping as ``key: value`` lines in insertion order."""
    return "".join(f"{key}: {_render_value(value)}\n" for key, value in fields.items())


def parse_report(text: str) -> dict[str, str]:
    """Parse ``key: value`` lines back into a dictionary of strings."""
    fields = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        fields[key.strip()] = value.strip()
    return fields


def write_report(path: Path, fields: Mapping[str, Any]) -> Path:
    """Write a report file, creating parent directories.

    Args:
        path: Destination file
        fields: Ordered report fields

    Returns:
        The written path
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_report(fields))
        logger.debug(f"Report written to {path}")
        return path
    except Exception as e:
        logger.error(f"Failed to write report {path}: {str(e)}")
        raise


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write rows of a curve (for example total bits against n) as CSV."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    return path
