"""Exact computations for nilradicals, isometry algebras of nilpotent metric Lie
algebras, and isometries of finite metric groups."""

__version__ = "0.1.0"
