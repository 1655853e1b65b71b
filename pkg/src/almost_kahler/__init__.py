"""Curvature of homogeneous compatible almost complex structures.

The package works entirely at the Lie-algebra level: a homogeneous
symplectic manifold ``G/K`` is encoded by a reductive split ``g = k + m``
with a symplectic form on ``m``, and a ``K``-invariant compatible almost
complex structure by a matrix ``H`` on ``m``.
"""
from .errors import (
    AlmostKahlerError,
    DegenerateBlockError,
    DegenerateSymplecticError,
    GenerationError,
    GeometryError,
    InputError,
    InvarianceError,
    NonInvertibleAdVError,
    SingularError,
    StrategyError,
)
from .liealg import LieAlgebra, bracket, ad_matrix, killing_form, validate
from .homogeneous import (
    ReductiveModel,
    Subspace,
    coadjoint_model,
    induced_sigma,
    invariant_complement,
    isotropy_subalgebra,
    symplectic_basis,
    symplectic_group_model,
    unitary_basis,
    xi_element,
)
from .compatible import (
    CompatibleStructure,
    adV_blocks,
    compatible_structure,
    nijenhuis,
    nijenhuis_tensor,
    polar_H,
    special_H_from_blocks,
)
from .curvature import (
    CurvatureReport,
    c1_representative,
    chern_ricci,
    curvature_report,
    hermitian_scalar,
    nijenhuis_norm_direct,
    nijenhuis_norm_formula,
    riemannian_scalar,
    specialness,
    zeta,
)

__all__ = [
    "AlmostKahlerError",
    "DegenerateBlockError",
    "DegenerateSymplecticError",
    "GenerationError",
    "GeometryError",
    "InputError",
    "InvarianceError",
    "NonInvertibleAdVError",
    "SingularError",
    "StrategyError",
    "LieAlgebra",
    "bracket",
    "ad_matrix",
    "killing_form",
    "validate",
    "ReductiveModel",
    "Subspace",
    "coadjoint_model",
    "induced_sigma",
    "invariant_complement",
    "isotropy_subalgebra",
    "symplectic_basis",
    "symplectic_group_model",
    "unitary_basis",
    "xi_element",
    "CompatibleStructure",
    "adV_blocks",
    "compatible_structure",
    "nijenhuis",
    "nijenhuis_tensor",
    "polar_H",
    "special_H_from_blocks",
    "CurvatureReport",
    "c1_representative",
    "chern_ricci",
    "curvature_report",
    "hermitian_scalar",
    "nijenhuis_norm_direct",
    "nijenhuis_norm_formula",
    "riemannian_scalar",
    "specialness",
    "zeta",
]
