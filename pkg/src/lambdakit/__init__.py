"""Exact-arithmetic toolkit for λ-ring calculus, Dold-Kan style homological
algebra, and derived exterior powers of perfect complexes."""

__version__ = "0.1.0"
