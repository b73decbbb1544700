"""Utility functions for Mackey Workbench."""

from .exact_linalg import RatMatrix, format_fraction, to_fraction

__all__ = [
    "RatMatrix",
    "format_fraction",
    "to_fraction",
]
