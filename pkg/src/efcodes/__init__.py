"""Linear codes over the non-unital rings E^s and F^s from simplicial complexes.

The package builds ring-linear codes whose defining sets come from
simplicial complexes of F_q^m, computes their Lee weight distributions
both by exhaustive enumeration and by closed formulas, and certifies
distance-optimality, minimality, and (Hermitian) self-orthogonality of
the Gray images and subfield codes.
"""

from .analysis import (
    Certificate,
    ab_minimal,
    divisibility_self_orthogonal,
    griesmer_certify,
    minimal_exhaustive,
    minimality_conditions,
    optimality_predicates,
    self_orthogonal,
    tau_conditions,
)
from .closed_form import (
    CodeParams,
    gray_params,
    prop1_distribution,
    prop2_distribution,
    theorem1_params,
    theorem2_params,
    theorem3_params,
)
from .errors import (
    BudgetError,
    EfcodesError,
    FieldError,
    HypothesisError,
    VerificationError,
)
from .finite_field import FieldSpec, field_for_order, make_field
from .ring_codes import (
    CodeSpec,
    GeneratorMatrix,
    WeightDistribution,
    build_defining_set,
    code_length,
    gray_code_matrix,
    lee_distribution,
    make_code_spec,
    matrix_weight_distribution,
    subfield_code_matrix,
)
from .simplicial import (
    SimplicialComplex,
    canonicalize,
    complex_size,
    enumerate_complex,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "Certificate",
    "CodeParams",
    "CodeSpec",
    "EfcodesError",
    "FieldError",
    "FieldSpec",
    "GeneratorMatrix",
    "HypothesisError",
    "SimplicialComplex",
    "VerificationError",
    "WeightDistribution",
    "ab_minimal",
    "build_defining_set",
    "canonicalize",
    "code_length",
    "complex_size",
    "divisibility_self_orthogonal",
    "enumerate_complex",
    "field_for_order",
    "gray_code_matrix",
    "gray_params",
    "griesmer_certify",
    "lee_distribution",
    "make_code_spec",
    "make_field",
    "matrix_weight_distribution",
    "minimal_exhaustive",
    "minimality_conditions",
    "optimality_predicates",
    "prop1_distribution",
    "prop2_distribution",
    "self_orthogonal",
    "subfield_code_matrix",
    "tau_conditions",
    "theorem1_params",
    "theorem2_params",
    "theorem3_params",
]
