"""Intersection cohomology Poincare polynomials of complete complexity-one T-varieties."""

__version__ = "0.1.0"
