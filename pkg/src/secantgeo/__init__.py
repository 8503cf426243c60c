"""Exact local geometry of projective varieties: second and third
fundamental forms, tangential and secant defects, Gauss fibers, and the
Clifford algebra structure forced on degenerate tangential hypersurfaces.
"""

from .scalars import BACKEND, Scalar
from .linalg import Matrix, Subspace, intersect, kernel, random_vector, rank, rref, span_sum
from .genericity import CertificationError, certified_value, derive_stream

__all__ = [
    "BACKEND",
    "CertificationError",
    "Matrix",
    "Scalar",
    "Subspace",
    "certified_value",
    "derive_stream",
    "intersect",
    "kernel",
    "random_vector",
    "rank",
    "rref",
    "span_sum",
]
