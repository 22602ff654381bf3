"""Monomial points on affine varieties over F_q(T): lifting, solving, and finite-level density checks."""

__version__ = "0.1.0"
