"""Exact weight computations for affine Kac-Moody algebras."""

__version__ = "0.1.0"
