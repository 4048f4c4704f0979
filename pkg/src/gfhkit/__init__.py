"""Generating family homology of Legendrians, numerically and combinatorially."""

__version__ = "0.1.0"
