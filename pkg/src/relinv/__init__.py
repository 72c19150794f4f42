"""Relative differential invariants and equivariant line bundles of Lie algebras of vector fields."""
__version__ = "0.1.0"
