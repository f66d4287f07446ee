"""Toolkit for freezing, bounded-change and convergent cellular automata."""
