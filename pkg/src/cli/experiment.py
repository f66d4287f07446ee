"""Experiment settings shared by every command: verb, seed and output locations."""
import argparse
import shlex
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from src.config import Config
from src.utils import get_logger, parse_report

logger = get_logger(__name__)

# Experiment-file keys that are not command-line options.
_RESERVED = ("verb", "seed", "output_dir")


@dataclass
class ExperimentConfig:
    """Resolved settings of one command run.

    An experiment file holds ``key: value`` lines: ``verb`` gives the verb and
    its positional words, ``seed`` and ``output_dir`` the shared settings, and
    every other key a long option of that verb (``yes`` for bare flags).
    """

    verb: str
    seed: int = field(default_factory=lambda: Config.DEFAULT_SEED)
    output_dir: Path = field(default_factory=lambda: Config.OUTPUT_DIR)
    options: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "ExperimentConfig":
        seed = Config.DEFAULT_SEED if args.seed is None else args.seed
        output_dir = Config.OUTPUT_DIR if args.output_dir is None else args.output_dir
        verb = " ".join(word for word in (args.verb, getattr(args, "action", None)) if word)
        return cls(verb, seed, Path(output_dir)).resolve()

    @classmethod
    def from_file(cls, path: Path) -> "ExperimentConfig":
        """Read an experiment file.

        Raises:
            ValueError: If the file names no verb or the seed is not an integer
        """
        try:
            fields = parse_report(Path(path).read_text())
        except Exception as e:
            logger.error(f"Failed to read experiment {path}: {str(e)}")
            raise
        if not fields.get("verb"):
            raise ValueError(f"Experiment {path} names no verb")
        options = {k: v for k, v in fields.items() if k not in _RESERVED}
        config = cls(
            fields["verb"],
            int(fields.get("seed", Config.DEFAULT_SEED)),
            Path(fields.get("output_dir", Config.OUTPUT_DIR)),
            options,
        )
        return config.resolve(Path(path).parent)

    def resolve(self, base: Optional[Path] = None) -> "ExperimentConfig":
        """Make the output directory and every option naming an existing file absolute."""
        base = Path.cwd() if base is None else base
        output_dir = self.output_dir if self.output_dir.is_absolute() else base / self.output_dir
        options = {}
        for key, value in self.options.items():
            candidate = base / value
            options[key] = str(candidate.resolve()) if value and candidate.is_file() else value
        self.output_dir = output_dir.resolve()
        self.options = options
        return self

    def to_argv(self) -> list[str]:
        argv = shlex.split(self.verb) + ["--seed", str(self.seed), "--output-dir", str(self.output_dir)]
        for key, value in self.options.items():
            flag = "--" + key.replace("_", "-")
            if value == "yes":
                argv.append(flag)
            else:
                argv += [flag, *shlex.split(value)]
        return argv

    def header(self, **extra: Any) -> dict[str, Any]:
        return {"verb": self.verb, "seed": self.seed, **extra}

    def output(self, name: str, override: Optional[Path] = None) -> Path:
        return Path(override) if override is not None else self.output_dir / name

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)
