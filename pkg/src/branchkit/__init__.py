"""Exact rational toolkit for branching Zuckerman modules along symmetric pairs."""

__version__ = "0.1.0"
