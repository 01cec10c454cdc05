"""Twisted L-value congruences for elliptic curves over Q."""

from ._lcongr import LcongrError, Toolkit, sweep_residue, verify_table

__all__ = ["LcongrError", "Toolkit", "sweep_residue", "verify_table"]
