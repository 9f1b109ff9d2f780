"""heisenkern: reduced Heisenberg algebras over exact fields.

Construction of the algebras g(K^4, Lambda^2(K^4)/ker, beta), classification
of kernel subspaces against the canonical orbit representatives, automorphism
group generators and membership predicates, and brute-force orbit-count
verification over small finite fields.
"""

from .fields import (FieldError, Undecidable, Rationals, PrimeField, ExtField,
                     RationalFunctionField, QuadExtension, make_field)
from .linalg import Subspace
from .classify import OrbitLabel, classify_subspace, find_witness
from .heisenberg import (HeisenbergAlgebra, Automorphism, make_algebra,
                         make_automorphism, sigma_generators,
                         membership_predicate, isomorphic)
from .quaternion import QuatAlgebra
from .orbits import enumerate_orbits, omega_counts, verify_table

__version__ = "0.1.0"
__all__ = [
    "FieldError", "Undecidable", "Rationals", "PrimeField", "ExtField",
    "RationalFunctionField", "QuadExtension", "make_field", "Subspace",
    "OrbitLabel", "classify_subspace", "find_witness", "HeisenbergAlgebra",
    "Automorphism", "make_algebra", "make_automorphism", "sigma_generators",
    "membership_predicate", "isomorphic", "QuatAlgebra", "enumerate_orbits",
    "omega_counts", "verify_table",
]
