"""Harmonic analysis on rank-one symmetric spaces and a Chernoff laboratory."""

__version__ = "0.1.0"
