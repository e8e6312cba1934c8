"""Quaternionic Szegedy quantum walks on finite graphs.

Core objects: quaternion scalars and matrices with their right-spectrum
machinery, the walk construction with its unitarity condition, the
spectral mapping through the doubly weighted matrix, eigenvector
lifting, and a battery of graph zeta determinant identities.
"""

from .errors import (
    DegenerateLiftError,
    NumericalError,
    QWalkError,
    ValidationError,
)
from .graph import Arc, Graph, build_graph
from .qmatrix import (
    MinimalPolynomial,
    PolyFactor,
    QMatrix,
    RootSubspace,
    complex_eigen,
    h_linear_independent,
    is_unitary,
    minimal_polynomial,
    psi,
    qvec,
    right_eigenbasis,
    right_eigenvalues,
    right_eigenvector,
    root_subspaces,
)
from .quaternion import (
    ConjugacyClass,
    Quaternion,
    class_of,
    format_quaternion,
    same_class,
    symplectic_decompose,
)
from .szegedy import (
    SpectrumReport,
    UnitarityReport,
    WalkOperators,
    WeightMap,
    build_walk,
    check_unitary_condition,
    full_spectrum,
    lift_eigenvector,
    random_instance,
    spectral_map,
    verify_structure,
)
from .zeta import (
    IdentityCheck,
    ihara_identity,
    quaternionic_identity,
    second_weighted_identity,
    sylvester_det_property,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ConjugacyClass",
    "DegenerateLiftError",
    "Graph",
    "IdentityCheck",
    "MinimalPolynomial",
    "NumericalError",
    "PolyFactor",
    "QMatrix",
    "QWalkError",
    "Quaternion",
    "RootSubspace",
    "SpectrumReport",
    "UnitarityReport",
    "ValidationError",
    "WalkOperators",
    "WeightMap",
    "build_graph",
    "build_walk",
    "check_unitary_condition",
    "class_of",
    "complex_eigen",
    "format_quaternion",
    "full_spectrum",
    "h_linear_independent",
    "ihara_identity",
    "is_unitary",
    "lift_eigenvector",
    "minimal_polynomial",
    "psi",
    "quaternionic_identity",
    "qvec",
    "random_instance",
    "right_eigenbasis",
    "right_eigenvalues",
    "right_eigenvector",
    "root_subspaces",
    "same_class",
    "second_weighted_identity",
    "spectral_map",
    "sylvester_det_property",
    "symplectic_decompose",
    "verify_structure",
    "__version__",
]
