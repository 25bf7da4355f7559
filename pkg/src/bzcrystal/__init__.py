"""Berenstein-Zelevinsky data and their crystal structure in types A_m,
A_infinity and A_ell^(1)."""

__version__ = "0.1.0"
