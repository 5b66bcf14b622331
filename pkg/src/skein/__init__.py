"""Exact skein theory of planar trivalent graphs."""

__version__ = "0.1.0"
