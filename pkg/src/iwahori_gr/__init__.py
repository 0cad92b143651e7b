"""Graded Lie algebra of a pro-p Iwahori subgroup, with exact arithmetic."""

__version__ = "0.1.0"
