"""Exact-arithmetic workbench for two axiomatizations of special relativity.

Layers: a rational square-root tower (:mod:`relcheck.scalar`), exact
Minkowski geometry over it (:mod:`relcheck.minkowski`), a two-sorted
first-order language with a defined-predicate corpus (:mod:`relcheck.fol`),
the canonical structures over the tower field (:mod:`relcheck.model`), and
a seeded three-valued verifier (:mod:`relcheck.verifier`).
"""

from relcheck.scalar import CapacityError, DomainError, Scalar, ScalarContext

__all__ = ["Scalar", "ScalarContext", "DomainError", "CapacityError"]

__version__ = "0.1.0"
