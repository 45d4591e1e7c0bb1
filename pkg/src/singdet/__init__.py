"""Exact computation of singular determinants, linking-form invariants,
special values of the Jones, Q and Alexander polynomials, and
unknotting-number obstructions, with an independent diagram-based oracle."""

__version__ = "0.1.0"
