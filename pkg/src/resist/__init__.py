"""Exact resistance matrices of balanced, strongly connected digraphs."""

from .cofactors import (
    cofsum_general,
    cofsum_projection_invariance,
    dmatrix_cofsum,
    kappa,
    kappa_bruteforce,
    kappa_matrix_tree,
    resistance_cofsum,
)
from .digraph import (
    Digraph,
    embed_undirected,
    parse_edge_list,
    parse_graph,
    random_balanced,
    reversal,
    symmetrize,
    validate,
)
from .exact import parse_rational, render
from .laplacian import LaplacianBundle, laplacian, pinv_block, pinv_shift, verify_penrose
from .matrix import IndexSet, adjugate, cofsum, det, inverse, submatrix
from .resistance import (
    ResistanceBundle,
    analyze,
    correction_row,
    metric_report,
    quadratic_form,
    resistance_det,
    resistance_inverse,
    resistance_matrix,
    tau,
)

__all__ = [
    "Digraph",
    "IndexSet",
    "LaplacianBundle",
    "ResistanceBundle",
    "adjugate",
    "analyze",
    "cofsum",
    "cofsum_general",
    "cofsum_projection_invariance",
    "correction_row",
    "det",
    "dmatrix_cofsum",
    "embed_undirected",
    "inverse",
    "kappa",
    "kappa_bruteforce",
    "kappa_matrix_tree",
    "laplacian",
    "metric_report",
    "parse_edge_list",
    "parse_graph",
    "parse_rational",
    "pinv_block",
    "pinv_shift",
    "quadratic_form",
    "random_balanced",
    "render",
    "resistance_cofsum",
    "resistance_det",
    "resistance_inverse",
    "resistance_matrix",
    "reversal",
    "submatrix",
    "symmetrize",
    "tau",
    "validate",
    "verify_penrose",
]

__version__ = "0.1.0"
