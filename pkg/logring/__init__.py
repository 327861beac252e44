"""Exact computations in the log Grothendieck ring of varieties."""

__version__ = "0.1.0"
