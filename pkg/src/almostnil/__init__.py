"""Nilpotent ideals of graded algebras and algebras with finite group actions,
built from generalized centralizers and checked by exact computation over F_p."""

__version__ = "0.1.0"
