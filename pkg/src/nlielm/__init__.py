"""Exact computations for n-Lie algebras, their Leibniz algebras and n-Lie algebras in LM."""

__version__ = "0.1.0"
