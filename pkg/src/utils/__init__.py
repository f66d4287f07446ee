"""Logging and report helpers shared by every subsystem."""
from src.utils.logger import attach_run_log, detach_run_log, get_logger
from src.utils.reports import format_report, parse_report, write_csv, write_report

__all__ = [
    "get_logger",
    "attach_run_log",
    "detach_run_log",
    "format_report",
    "parse_report",
    "write_report",
    "write_csv",
]
