"""Exact computations with connected graded quadratic algebras."""

__version__ = "0.1.0"
