"""Indices, the error term theta, and tropical friezes on finite (d+2)-angulated categories."""

from .abelian import (
    BasisMismatchError,
    DimensionError,
    FreeAbelianElement,
    GroupHomomorphism,
    elem_add,
    elem_eq,
    elem_negate,
    elem_scale,
    elem_zero,
    hom_apply,
    hom_compose,
    hom_from_columns,
    hom_identity,
)
from .catspec import (
    Angle,
    CategorySpec,
    ExchangePairDecl,
    ObjectExpr,
    Resolution,
    SpecFormatError,
    SpecValidationError,
    Violation,
    candidate_exchange_pairs,
    emit_spec,
    load_spec,
    suspend_object,
    unsuspend_object,
    validate,
)
from .example import builtin, builtin_fixtures, builtin_ot_a4
from .frieze import (
    ClosureError,
    ConeMatrix,
    FriezeValues,
    check_frieze,
    cone_matrix,
    enumerate_admissible,
    frieze_from_phi,
    phi_admissible,
    propagate_window,
)
from .index import IndexTable, index_of_indec, index_of_object, index_table
from .theta import ThetaMap, theta_from_spec, verify_dichotomy, verify_theorem_A

__version__ = "0.1.0"
