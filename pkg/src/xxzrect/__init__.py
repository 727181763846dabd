"""Boundary-driven graded XXZ chains: steady states, currents, rectification."""

__version__ = "0.1.0"
