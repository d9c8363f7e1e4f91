"""Numerical engine for basic hypergeometric expansions and identity checks."""

__version__ = "0.1.0"
