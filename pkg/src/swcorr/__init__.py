"""Stratonovich-Weyl correspondences for the Heisenberg motion groups."""

__version__ = "0.1.0"
