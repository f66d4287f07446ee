"""Main application entry point for the cellular automata toolkit."""
import sys

from src.cli import run


def main():
    """Main application entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
