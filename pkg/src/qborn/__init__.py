"""Contexts of M_n(C) as projector systems, the poset of contexts with its
coarse-graining maps, finitely supported valuations, trace-pairing tables
coherent under refinement, and global-section search over finite posets.

The numerical core (a cyclic Jacobi eigensolver for Hermitian matrices)
ships as a compiled extension with a pure-Python twin; ``KERNEL_BACKEND``
names the one selected at import time.
"""

from qborn.born import (
    BornTable,
    PureState,
    born_csv,
    born_report,
    born_table,
    coherence_check,
    observable_distribution,
    pure_state_section,
    rank1_check,
    rank_k_decomposition_check,
    section_compatibility_check,
)
from qborn.errors import (
    NumericalError,
    QbornError,
    ValidationError,
)
from qborn.fixtures import (
    Fixture,
    fixture_from_json,
    fixture_to_json,
    magic_square_observables,
    mermin_peres_fixture,
    random_bloch_poset,
    random_commuting_family,
    sign_assignment_exists,
)
from qborn.kernels import BACKEND as KERNEL_BACKEND
from qborn.linalg import (
    DEFAULT_TOL,
    SpectralDecomposition,
    Tolerance,
    adjoint,
    hermitian_eigendecomposition,
    is_hermitian,
    is_projector,
    mat_mul,
    matrix_from_json,
    matrix_to_json,
    simultaneous_diagonalization,
    trace,
)
from qborn.poset import (
    Context,
    ContextPoset,
    Spectrum,
    bottom_context,
    build_poset,
    context_leq,
    generate_context,
    make_context,
    meet_system,
    poset_from_json,
    poset_to_json,
)
from qborn.qubit import (
    BlochVector,
    bloch_to_projector,
    projector_to_bloch,
    qubit_born_closed_form,
    qubit_context,
)
from qborn.sections import (
    Section,
    SearchReport,
    check_section,
    count_global_sections,
    find_global_section,
    search_global_section,
)
from qborn.systems import (
    OrderedPartition,
    ProjectorSystem,
    Refinement,
    canonicalize,
    check_refinement,
    coarsen,
    coarsen_point,
    compose_refinements,
    find_refinement,
    identity_refinement,
    type_of,
    validate_system,
)
from qborn.valuations import (
    FiniteValuation,
    ProbabilityValuation,
    bind,
    dirac,
    measure,
    modular_check,
    normalize,
    product,
    pushforward,
    valuation_from_json,
    valuation_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "BornTable",
    "Context",
    "ContextPoset",
    "DEFAULT_TOL",
    "FiniteValuation",
    "Fixture",
    "KERNEL_BACKEND",
    "NumericalError",
    "OrderedPartition",
    "ProbabilityValuation",
    "ProjectorSystem",
    "PureState",
    "QbornError",
    "Refinement",
    "Section",
    "SearchReport",
    "SpectralDecomposition",
    "Spectrum",
    "Tolerance",
    "ValidationError",
    "adjoint",
    "bind",
    "bloch_to_projector",
    "born_csv",
    "born_report",
    "born_table",
    "bottom_context",
    "build_poset",
    "canonicalize",
    "check_refinement",
    "check_section",
    "coarsen",
    "coarsen_point",
    "coherence_check",
    "compose_refinements",
    "context_leq",
    "count_global_sections",
    "dirac",
    "find_global_section",
    "find_refinement",
    "fixture_from_json",
    "fixture_to_json",
    "generate_context",
    "hermitian_eigendecomposition",
    "identity_refinement",
    "is_hermitian",
    "is_projector",
    "magic_square_observables",
    "make_context",
    "mat_mul",
    "matrix_from_json",
    "matrix_to_json",
    "measure",
    "meet_system",
    "mermin_peres_fixture",
    "modular_check",
    "normalize",
    "observable_distribution",
    "poset_from_json",
    "poset_to_json",
    "product",
    "projector_to_bloch",
    "pure_state_section",
    "pushforward",
    "qubit_born_closed_form",
    "qubit_context",
    "random_bloch_poset",
    "random_commuting_family",
    "rank1_check",
    "rank_k_decomposition_check",
    "search_global_section",
    "section_compatibility_check",
    "sign_assignment_exists",
    "simultaneous_diagonalization",
    "trace",
    "type_of",
    "valuation_from_json",
    "valuation_to_json",
    "validate_system",
]
