"""Wach modules, Gamma-actions and mod-p reductions for rank-one and rank-two
crystalline representations of unramified p-adic fields."""

__version__ = "0.1.0"
