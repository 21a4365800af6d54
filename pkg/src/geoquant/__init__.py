"""Schrödinger and holomorphic quantization of finite-dimensional linear and
affine phase spaces, with the Segal-Bargmann transform between them."""

from .affine import AffineSpace, AffineSpan, affine_space, transform_affine
from .bargmann import inverse_transform, kernel, pairing, transform
from .correspondence import (
    ComplexStructure,
    VacuumForm,
    j_from_omega,
    metric,
    omega_from_j,
    reference_complex_structure,
)
from .errors import (
    DegreeCapError,
    IllConditionedError,
    InadmissibleBracketError,
    InvalidComplexStructureError,
    InvalidVacuumFormError,
    QuadratureBudgetError,
    TruncationError,
)
from .field_models import LatticeModel, build_lattice
from .observables import apply, commutator_defect, observable
from .phase_space import PhaseSpace, build_phase_space, standard_phase_space
from .polynomial import Polynomial
from .spans import CoherentSpan, Quantization, Term

__version__ = "0.1.0"

__all__ = [
    "AffineSpace",
    "AffineSpan",
    "CoherentSpan",
    "ComplexStructure",
    "DegreeCapError",
    "IllConditionedError",
    "InadmissibleBracketError",
    "InvalidComplexStructureError",
    "InvalidVacuumFormError",
    "LatticeModel",
    "PhaseSpace",
    "Polynomial",
    "QuadratureBudgetError",
    "Quantization",
    "Term",
    "TruncationError",
    "VacuumForm",
    "affine_space",
    "apply",
    "build_lattice",
    "build_phase_space",
    "commutator_defect",
    "inverse_transform",
    "j_from_omega",
    "kernel",
    "metric",
    "observable",
    "omega_from_j",
    "pairing",
    "reference_complex_structure",
    "standard_phase_space",
    "transform",
    "transform_affine",
]
