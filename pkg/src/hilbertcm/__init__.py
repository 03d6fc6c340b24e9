"""Exact arithmetic intersection numbers for CM cycles on Hilbert modular
surfaces, cross-checked against the reflex-side count b1(p), plus the
degenerate Gross-Zagier singular-moduli case."""

__version__ = "0.1.0"

from .exactnum import (
    ARCHIMEDEAN,
    Factorization,
    factorize,
    hilbert_symbol,
    is_prime,
    is_squarefree,
    kronecker_symbol,
    padic_valuation,
)
from .grosskeating import (
    GkData,
    OddDiagShape,
    TwoAdicShape,
    gk_density,
    gk_index,
    gk_invariants,
    is_isotropic,
)
from .gzmoduli import (
    GzInputError,
    GzParams,
    HeegnerForm,
    class_number,
    epsilon_of,
    gz_intersection_at_p,
    gz_total,
    j_invariant,
    reduced_forms,
    singular_moduli_log,
)
from .intersect import (
    IntersectionResult,
    LocalFactor,
    ReflexLocalData,
    alpha_unit,
    b1_at_p,
    beta_l,
    beta_product,
    intersection_at_p,
    intersection_total,
    local_factors,
    rho_local,
    split_in_Ktilde,
    verify_main_identity,
)
from .quadcm import (
    CmFieldData,
    FieldValidationError,
    QuadElem,
    conj,
    enumerate_fields,
    is_totally_negative,
    norm,
    trace,
    validate_cm_field,
)
from .tmatrix import TMatrix, TMatrixError, admissible_n, all_tmatrices, build_tmatrix

__all__ = [
    "ARCHIMEDEAN",
    "CmFieldData",
    "Factorization",
    "FieldValidationError",
    "GkData",
    "GzInputError",
    "GzParams",
    "HeegnerForm",
    "IntersectionResult",
    "LocalFactor",
    "OddDiagShape",
    "QuadElem",
    "ReflexLocalData",
    "TMatrix",
    "TMatrixError",
    "TwoAdicShape",
    "admissible_n",
    "all_tmatrices",
    "alpha_unit",
    "b1_at_p",
    "beta_l",
    "beta_product",
    "build_tmatrix",
    "class_number",
    "conj",
    "enumerate_fields",
    "epsilon_of",
    "factorize",
    "gk_density",
    "gk_index",
    "gk_invariants",
    "gz_intersection_at_p",
    "gz_total",
    "hilbert_symbol",
    "intersection_at_p",
    "intersection_total",
    "is_isotropic",
    "is_prime",
    "is_squarefree",
    "is_totally_negative",
    "j_invariant",
    "kronecker_symbol",
    "local_factors",
    "norm",
    "padic_valuation",
    "reduced_forms",
    "rho_local",
    "singular_moduli_log",
    "split_in_Ktilde",
    "trace",
    "validate_cm_field",
    "verify_main_identity",
]
