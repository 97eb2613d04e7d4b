"""Candidate root posets for noncrystallographic Coxeter types."""

from .poset import GradedPoset, build_poset, read_poset, write_poset

__version__ = "0.1.0"

__all__ = ["GradedPoset", "build_poset", "read_poset", "write_poset", "__version__"]
