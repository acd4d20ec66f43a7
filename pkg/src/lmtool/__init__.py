"""Exact invariants of rank-one ideals of the first Weyl algebra.

The library computes, in exact rational arithmetic, filtered pieces of
ideals attached to condition subspaces V of C[x] and of the hom spaces
between them, their Hilbert sequences, and the integer invariants p_D
(stable graded codimension of the endomorphism ring) and n (constant of
the quadratic Hilbert fit), together with mechanical checks of the
identities p_D = 2n and p_12 = n_1 + n_2.
"""

from .catalog import catalog, catalog_get, catalog_names
from .graded import (
    GradedPiece,
    QFraction,
    clear_cache,
    gr_inclusion_check,
    gr_symbol_space,
    hom_dims,
    hom_piece,
    module_dims,
    module_piece,
)
from .invariants import (
    DEFAULT_WEIGHTS,
    ChernResult,
    DualResult,
    FitResult,
    HilbertSeq,
    LmResult,
    NegativeChernError,
    NonPolynomialError,
    NotStabilizedError,
    RelativeResult,
    Report,
    WeightIndependenceResult,
    chern_number,
    dual_check,
    fit_euler,
    full_report,
    hilbert_seq,
    lm_invariant,
    relative_invariant,
    report_csv,
    report_text,
    telescoping_check,
    verify_lm_chern,
    weight_independence,
)
from .linalg import Poly, QMatrix, Rat, RatFunc, RowReducer, nullspace, rank
from .subspace import Functional, SpecError, SubspaceSpec, parse_spec
from .weyl import SymbolPoly, Weight, WeylEl, dim_A, monomial_basis, parse_weyl

__version__ = "0.1.0"

__all__ = [
    "ChernResult",
    "DEFAULT_WEIGHTS",
    "DualResult",
    "FitResult",
    "Functional",
    "GradedPiece",
    "HilbertSeq",
    "LmResult",
    "NegativeChernError",
    "NonPolynomialError",
    "NotStabilizedError",
    "Poly",
    "QFraction",
    "QMatrix",
    "Rat",
    "RatFunc",
    "RelativeResult",
    "Report",
    "RowReducer",
    "SpecError",
    "SubspaceSpec",
    "SymbolPoly",
    "Weight",
    "WeightIndependenceResult",
    "WeylEl",
    "catalog",
    "catalog_get",
    "catalog_names",
    "chern_number",
    "clear_cache",
    "dim_A",
    "dual_check",
    "fit_euler",
    "full_report",
    "gr_inclusion_check",
    "gr_symbol_space",
    "hilbert_seq",
    "hom_dims",
    "hom_piece",
    "lm_invariant",
    "module_dims",
    "module_piece",
    "monomial_basis",
    "nullspace",
    "parse_spec",
    "parse_weyl",
    "rank",
    "relative_invariant",
    "report_csv",
    "report_text",
    "telescoping_check",
    "verify_lm_chern",
    "weight_independence",
    "__version__",
]
