"""Monogenic maps of a three-dimensional variable with values in the
algebra of complex quaternions."""

from .algebra import (BASIS, E1, E2, E3, E4, ONE, ZERO, Ideal, MatrixRep, Quat, QuatStd,
                      f1, f1_hat, f2, f2_hat, from_matrix, from_std, ideal_member, inverse,
                      mul, norm, to_matrix, to_std)
from .frame import (EXAMPLE_FRAME, DomainBox, Frame, Point3, degeneracy_lines, embed,
                    image_domains, is_degenerate, validate, xi)

__version__ = "0.1.0"

__all__ = [
    "BASIS", "E1", "E2", "E3", "E4", "ONE", "ZERO", "Ideal", "MatrixRep", "Quat", "QuatStd",
    "f1", "f1_hat", "f2", "f2_hat", "from_matrix", "from_std", "ideal_member", "inverse",
    "mul", "norm", "to_matrix", "to_std", "EXAMPLE_FRAME", "DomainBox", "Frame", "Point3",
    "degeneracy_lines", "embed", "image_domains", "is_degenerate", "validate", "xi",
]
