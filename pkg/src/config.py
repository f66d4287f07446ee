"""Configuration management for the cellular automata toolkit."""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Central configuration for simulations, analyses and experiment runs."""

    # Directories
    PROJECT_ROOT = Path(__file__).parent.parent
    OUTPUT_DIR = Path(os.getenv("CA_OUTPUT_DIR", str(PROJECT_ROOT / "output")))

    # Simulation horizons
    DEFAULT_HORIZON: int = int(os.getenv("DEFAULT_HORIZON", "200"))
    DEFAULT_CONFIRM_TAIL: int = int(os.getenv("DEFAULT_CONFIRM_TAIL", "8"))

    # Randomised sampling
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "0"))

    # Search budgets
    SEARCH_NODE_LIMIT: int = int(os.getenv("SEARCH_NODE_LIMIT", "200000"))
    LIMIT_STEP_CAP: int = int(os.getenv("LIMIT_STEP_CAP", "100000"))
    REACH_CANDIDATE_LIMIT: int = int(os.getenv("REACH_CANDIDATE_LIMIT", "100000"))

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Names of the blank and wall states in compiled and shrinking-zone rules
    BLANK_STATE: str = os.getenv("CA_BLANK_STATE", "b")
    WALL_STATE: str = os.getenv("CA_WALL_STATE", "w")

    @classmethod
    def ensure_directories(cls) -> None:
        """Ensure required directories exist."""
        cls.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

    @classmethod
    def validate(cls) -> None:
        """Validate configuration.

        Raises:
            ValueError: If a numeric setting is out of range, the log level is unknown
                or the blank and wall names are unusable
        """
        if cls.LOG_LEVEL.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown LOG_LEVEL: {cls.LOG_LEVEL}")
        for name in (
            "DEFAULT_HORIZON",
            "DEFAULT_CONFIRM_TAIL",
            "SEARCH_NODE_LIMIT",
            "LIMIT_STEP_CAP",
            "REACH_CANDIDATE_LIMIT",
        ):
            if getattr(cls, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(cls, name)}")
        for name in ("BLANK_STATE", "WALL_STATE"):
            value = getattr(cls, name)
            if not value or any(ch.isspace() or ch in "[](),;#" for ch in value):
                raise ValueError(f"{name} must be a non-empty name without spaces or brackets, got {value!r}")
        if cls.BLANK_STATE == cls.WALL_STATE:
            raise ValueError(f"BLANK_STATE and WALL_STATE must differ, both are {cls.BLANK_STATE!r}")
