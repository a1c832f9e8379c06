"""Exact computations in Hecke algebras of Hecke pairs."""

__version__ = "0.1.0"
