"""Verification laboratory for level-2 higher equations of motion in Liouville CFT."""

__version__ = "0.1.0"
