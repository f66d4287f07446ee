"""Logging for the cellular automata toolkit.

Every module logs through ``get_logger(__name__)``. Records go to stdout
and, while a run log is attached, also to that file, so a whole CLI run
can be captured next to the reports it writes.
"""
import logging
import sys
from pathlib import Path
from typing import Optional

from src.config import Config

FORMAT = logging.Formatter(
    '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)


class Logger:
    """Per-module logger factory with an optional shared run log."""

    _loggers = {}
    _run_handler: Optional[logging.FileHandler] = None

    @staticmethod
    def _file_handler(path: Path, level: int) -> logging.FileHandler:
        path.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(path)
        handler.setLevel(level)
        handler.setFormatter(FORMAT)
        return handler

    @classmethod
    def get_logger(cls, name: str, log_file: Optional[Path] = None) -> logging.Logger:
        """Get or create a logger with the specified name.

        Args:
            name: Logger name, usually the module's ``__name__``
            log_file: Optional file that receives this logger's records only

        Returns:
            Configured logger instance
        """
        if name in cls._loggers:
            return cls._loggers[name]

        level = getattr(logging, Config.LOG_LEVEL.upper())
        logger = logging.getLogger(name)
        logger.setLevel(level)
        logger.propagate = False
        logger.handlers.clear()

        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(level)
        console_handler.setFormatter(FORMAT)
        logger.addHandler(console_handler)

        if log_file:
            logger.addHandler(cls._file_handler(log_file, level))
        if cls._run_handler is not None:
            logger.addHandler(cls._run_handler)

        cls._loggers[name] = logger
        return logger

    @classmethod
    def attach_run_log(cls, path: Path) -> None:
        """Send the records of every toolkit logger to ``path`` until detached."""
        cls.detach_run_log()
        cls._run_handler = cls._file_handler(path, getattr(logging, Config.LOG_LEVEL.upper()))
        for logger in cls._loggers.values():
            logger.addHandler(cls._run_handler)

    @classmethod
    def detach_run_log(cls) -> None:
        if cls._run_handler is None:
            return
        for logger in cls._loggers.values():
            logger.removeHandler(cls._run_handler)
        cls._run_handler.close()
        cls._run_handler = None


def get_logger(name: str, log_file: Optional[Path] = None) -> logging.Logger:
    """Convenience function to get a logger.

    Args:
        name: Logger name
        log_file: Optional file path that also receives the records

    Returns:
        Configured logger instance
    """
    return Logger.get_logger(name, log_file)


def attach_run_log(path: Path) -> None:
    Logger.attach_run_log(path)


def detach_run_log() -> None:
    Logger.detach_run_log()
