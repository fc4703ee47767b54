"""finalg: computing with finite algebras presented as operation tables.

Congruence lattices, centralizers and abelianness, weak difference terms,
difference algebras of abelian congruences, division rings of abelian
minimal congruences, similarity of subdirectly irreducible algebras, and a
generator of subdirectly irreducible witness algebras with prescribed
abelian structure.
"""

from .core import (
    CapExceededError,
    DirectProduct,
    ElementMap,
    FiniteAlgebra,
    Operation,
    Quotient,
    SignatureMismatchError,
    UnaryPolynomialSet,
    evaluate,
    find_isomorphism,
    generate_subuniverse,
    is_homomorphism,
    is_subuniverse,
    power,
    product,
    quotient,
    unary_polynomials,
)
from .congruences import (
    CongruenceLattice,
    CoverPair,
    Partition,
    StructureReport,
    check_interval_modular_permuting,
    check_perspectivity,
    congruence_generated,
    congruence_lattice,
    is_congruence,
    join,
    principal_congruence,
    structure_report,
)
from .centrality import (
    CentralityVerdict,
    InconsistencyError,
    MatrixSet,
    Tolerance,
    TwoTermVerdict,
    centralizer,
    centralizes,
    check_centrality_laws,
    generate_matrices,
    is_abelian,
    two_term_condition,
)
from .diffterm import (
    AffineDecomposition,
    ClassGroup,
    WdtCertificate,
    affine_decompose,
    certificate_from_operation,
    check_wdt_laws,
    class_group,
    connecting_polynomial,
    search_wdt,
    subuniverse_transversals,
    transversal_automorphism,
    verify_wdt,
)
from .diffalg import (
    ArrowGraph,
    ClassEmbedding,
    DeltaCongruence,
    DifferenceAlgebra,
    PairAlgebra,
    RangeSubgroup,
    arrow_graph,
    delta_congruence,
    difference_algebra,
    lambda_embed,
    pair_algebra,
    range_of_class,
    verify_diffalg_theorems,
)
from .similarity import (
    Bridge,
    DiffOf,
    EndomorphismRing,
    FreeseRing,
    PerspectivityTransfer,
    SimilarityVerdict,
    VectorAction,
    bridge_construct,
    bridge_verify,
    canonical_action,
    diff_of,
    division_ring,
    freese_ring,
    is_similar,
    perspective_diff_iso,
)
from .generator import (
    FiniteField,
    GeneratedAlgebra,
    GeneratorConfig,
    SemilatticeOverMaltsev,
    build_field,
    build_som,
    config_from_dict,
    config_to_dict,
    fixture_gen1,
    fixture_gen2,
    fixture_gen3,
    generate_example,
    verify_claims,
)
from .documents import (
    DocumentError,
    parse_algebra,
    parse_partition_argument,
    serialize_algebra,
    serialize_report,
)
from .report import CheckItem, Report
from .cli import run_command

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
