"""Exact verification tools for ternary weakly regular bent functions."""

__version__ = "0.1.0"
