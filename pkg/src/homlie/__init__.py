"""Exact computations with generalized derivations and Hom-Lie algebras."""

__version__ = "0.1.0"
