"""Finite models of operational resolutions, state transitions and their quantaloids."""

__version__ = "0.1.0"
