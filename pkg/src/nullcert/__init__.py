"""Exact infeasibility certificates for polynomial systems over prime fields.

The prover searches for multipliers beta_i with sum(beta_i * f_i) = g at
increasing multiplier degree, reducing each degree to the consistency of a
sparse linear system over GF(p).  A graph front end encodes 3-colorability
(and general k-colorability) as such a system.
"""

from nullcert.poly import FieldSpec, Monomial, Polynomial, PolySystem

__all__ = ["FieldSpec", "Monomial", "Polynomial", "PolySystem"]

__version__ = "0.1.0"
