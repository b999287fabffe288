"""Epstein zeta functions and exact Lennard-Jones lattice minimizers in 2D."""

__version__ = "0.1.0"
