"""quiverkit: exact quiver mutation, green sequences, and DT-style series."""

from quiverkit.dt import (
    DTProduct,
    IdentityReport,
    UnknownWithinBounds,
    YSeed,
    conjugate_monomial,
    dt_invariant,
    dt_order_probe,
    dt_product,
    verify_identity,
    y_seed_mutate,
)
from quiverkit.dynkin import (
    DynkinQuiver,
    DynkinSpec,
    SquareProduct,
    coxeter_number,
    dynkin_green_sequences,
    dynkin_quiver,
    square_product,
    square_product_sequences,
)
from quiverkit.fixtures import Fixture, fixture, fixture_names
from quiverkit.qalgebra import (
    AlgebraError,
    QCoefficient,
    QuantumSeries,
    dilog_coefficient,
    dilog_series,
    lambda_of,
    lambda_pairing,
)
from quiverkit.quiver import (
    CMatrix,
    InternalInvariantError,
    MutationState,
    Permutation,
    Quiver,
    QuiverError,
    apply_sequence,
    canonical_form,
    canonical_framed_key,
    frame,
    frozen_isomorphism,
    quiver_from_arrows,
)
from quiverkit.search import (
    ClassEnumeration,
    ExchangeGraphSlice,
    GreenSearchResult,
    SequenceReport,
    StepRecord,
    acyclic_green_sequence,
    build_exchange_graph,
    enumerate_mutation_class,
    find_reddening_sequences,
    search_green_sequences,
    verify_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "CMatrix",
    "ClassEnumeration",
    "DTProduct",
    "DynkinQuiver",
    "DynkinSpec",
    "ExchangeGraphSlice",
    "Fixture",
    "GreenSearchResult",
    "IdentityReport",
    "InternalInvariantError",
    "MutationState",
    "Permutation",
    "QCoefficient",
    "QuantumSeries",
    "Quiver",
    "QuiverError",
    "SequenceReport",
    "SquareProduct",
    "StepRecord",
    "UnknownWithinBounds",
    "YSeed",
    "acyclic_green_sequence",
    "apply_sequence",
    "build_exchange_graph",
    "canonical_form",
    "canonical_framed_key",
    "conjugate_monomial",
    "coxeter_number",
    "dilog_coefficient",
    "dilog_series",
    "dt_invariant",
    "dt_order_probe",
    "dt_product",
    "dynkin_green_sequences",
    "dynkin_quiver",
    "enumerate_mutation_class",
    "find_reddening_sequences",
    "fixture",
    "fixture_names",
    "frame",
    "frozen_isomorphism",
    "lambda_of",
    "lambda_pairing",
    "quiver_from_arrows",
    "search_green_sequences",
    "square_product",
    "square_product_sequences",
    "verify_identity",
    "verify_sequence",
    "y_seed_mutate",
]
