"""frobex: verify and refute Frobenius-extension properties of quantum
algebras graded or filtered by totally ordered abelian groups.

The package certifies quantum affine space over its ell-centre, transfers
the property through filtered lifts and Rees algebras on a q-Weyl fixture,
and refutes the graded quantum Grassmannian Gr(2,4) through its degree
census.  All arithmetic is exact, over prime fields with a distinguished
root of unity.
"""

from .algcore import (
    BasedAlgebra,
    Element,
    RootField,
    combine,
    default_prime,
    filtered_degree,
    gr_of,
    multiply,
    parse_algebra_config,
    top_symbol,
)
from .errors import (
    AlgebraDefinitionError,
    BudgetExceeded,
    ConfigError,
    DimensionMismatch,
    DomainError,
    FrobexError,
    HomogeneityError,
    UnsupportedStructure,
)
from .frobenius import (
    CentralFreeExtension,
    FrobeniusCertificate,
    GramStatus,
    ProjectionForm,
    det_is_unit,
    dual_basis,
    ell_centre_extension,
    gram_matrix,
    lift_form,
    nakayama_on_generators,
    reduce_at_point,
    verify_frobenius,
)
from .grassmannian import (
    GrGrassmannian,
    degree_census,
    ell_centre_module_basis,
    normal_form,
    verify_freeness_window,
)
from .grpdeg import (
    NEG_INF,
    DegreeMultiset,
    GroupElement,
    in_positive_cone,
    lex_compare,
    multiset_symmetry_witness,
)
from .qas import (
    QuantumAffineSpace,
    frobenius_form,
    monomial_product,
    quantum_weyl,
    restricted_decompose,
)
from .rees import cone_reduction, rees_extension, rees_form, rees_of, reduce_canonical

__version__ = "0.1.0"
