"""Denniston maximal arcs over GF(2^m) and functional codes built on them."""

from .gf import FieldContext, FieldSpec, SubspacePolynomial, subspace_polynomial
from .arcs import (
    AdditiveSubgroup,
    Arc,
    QuadraticForm,
    denniston_arc,
    form_is_irreducible,
    subgroup_from_basis,
    subgroup_from_elements,
    verify_maximal_arc,
)
from .funcode import (
    CONIC5,
    CUBIC10,
    LINEAR3,
    EvalCode,
    MonomialSpace,
    WeightDistribution,
    build_code,
    macwilliams_dual_distribution,
    min_distance,
    two_weight_check,
    weight_distribution,
)

__all__ = [
    "FieldContext",
    "FieldSpec",
    "SubspacePolynomial",
    "subspace_polynomial",
    "AdditiveSubgroup",
    "Arc",
    "QuadraticForm",
    "denniston_arc",
    "form_is_irreducible",
    "subgroup_from_basis",
    "subgroup_from_elements",
    "verify_maximal_arc",
    "CONIC5",
    "CUBIC10",
    "LINEAR3",
    "EvalCode",
    "MonomialSpace",
    "WeightDistribution",
    "build_code",
    "macwilliams_dual_distribution",
    "min_distance",
    "two_weight_check",
    "weight_distribution",
]

__version__ = "0.1.0"
