"""
Exact computations in the Kauffman skein algebra of the torus.

Modules:
    coeff         scalars in Q(s, v), quantum integers and named constants
    torus         generators D_x, normal forms, commutators, GL2(Z) action
    certificates  inductive reduction trees for the commutator relation
    annulus       hook-basis fragment of the annulus skein
    bmw2          the three dimensional algebra BMW_2
    bracket       Kauffman bracket torus algebra and Chebyshev polynomials
"""

from src.algebra.coeff import DomainError, RatFunc, delta, qint

__all__ = ["DomainError", "RatFunc", "delta", "qint"]
