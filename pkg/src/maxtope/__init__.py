"""Exact rational polyhedral geometry for maxout network polytopes."""

__version__ = "0.1.0"
