"""Barker sequences: exact identities, power sums, nonexistence certificates and search."""

__version__ = "0.1.0"
