"""Slice regular polynomials over quaternions, octonions and Clifford algebras.

Evaluation, *-products, sphere norms, zero sets, Fejer/Cesaro machinery and
numerical checks of Bernstein, Erdos-Lax and Ankeny-Rivlin type inequalities.
"""

from .hypercomplex import (
    OCTONION,
    QUATERNION,
    CliffordElement,
    DomainError,
    ImaginaryUnit,
    Octonion,
    Quaternion,
    clifford,
)
from .slicepoly import SlicePolynomial, polynomial_from_json, polynomial_to_json, star_product
from .analysis import ClassificationAmbiguous, RootFindingError, sup_norm_sphere, zero_set

__version__ = "0.1.0"

__all__ = [
    "OCTONION",
    "QUATERNION",
    "CliffordElement",
    "DomainError",
    "ImaginaryUnit",
    "Octonion",
    "Quaternion",
    "clifford",
    "SlicePolynomial",
    "polynomial_from_json",
    "polynomial_to_json",
    "star_product",
    "ClassificationAmbiguous",
    "RootFindingError",
    "sup_norm_sphere",
    "zero_set",
]
