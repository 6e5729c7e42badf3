"""Fixed registry of identities checked by ``resist verify``.

Each entry yields one :class:`Check`.  The order of the registry is the order
of the report and never depends on the data.
"""

from __future__ import annotations

import random

import numpy as np

from .checks import Check, equality
from .cofactors import (
    check_tree_count_link,
    reciprocal_sums,
    resistance_cofsum_closed,
    tree_counts,
)
from .digraph import Digraph, reversal
from .exact import EXACT
from .laplacian import LaplacianBundle, laplacian, pinv_block, pinv_shift, verify_penrose
from .matrix import IndexSet, SingularMatrixError, cofsum, det, inverse, submatrix
from .resistance import (
    ResistanceBundle,
    correction_checks,
    det_closed_form,
    inverse_closed_form,
    metric_report,
    quadratic_form_by_x,
    resistance_bundle,
    resistance_matrix,
    structure_checks,
    tau_by_x,
)


def random_index_sets(n: int, count: int, rng: random.Random) -> list[tuple[IndexSet, IndexSet]]:
    """``count`` pairs of equal-size index sets with nonempty complements."""
    pairs = []
    for _ in range(count):
        eta = rng.randint(1, n - 1)
        pairs.append((IndexSet(rng.sample(range(1, n + 1), eta)),
                      IndexSet(rng.sample(range(1, n + 1), eta))))
    return pairs


def _metric_checks(R: np.ndarray) -> list[Check]:
    report = metric_report(R)
    return [
        Check("zero_diagonal", "r_ii = 0", not report.diagonal_violations,
              witness=report.diagonal_violations[:1] or None),
        Check("positivity", "r_ij > 0 for i != j", not report.positivity_violations,
              witness=report.positivity_violations[:1] or None),
        Check("triangle", "r_ik <= r_ij + r_jk", not report.triangle_violations,
              witness=report.triangle_violations[:1] or None),
    ]


def _inverse_check(bundle: LaplacianBundle, rb: ResistanceBundle) -> Check:
    anchor = "R^-1 = -L/2 + tau (tau' + 1' diag(L+) M) / (tau'R tau)"
    try:
        direct = inverse(rb.R)
    except SingularMatrixError as exc:
        return Check("inverse_closed_form", anchor, False, witness=str(exc))
    return equality("inverse_closed_form", anchor, inverse_closed_form(bundle, rb), direct)


def _cofsum_checks(bundle, rb, sets) -> Check:
    worst = 0.0
    failed = None
    for rows, cols in sets:
        c = equality("", "", cofsum(submatrix(rb.R, rows, cols)),
                     resistance_cofsum_closed(bundle, rb.kappa, rows, cols))
        worst = max(worst, c.residual)
        if not c.passed and failed is None:
            failed = [list(rows), list(cols)]
    return Check("resistance_cofsum",
                 "cofsum(R[A,B]) = (-1)^(a(A)+a(B)+eta-1) 2^(eta-1)/kappa det(L[B^c,A^c])",
                 failed is None, worst, failed)


def run_registry(g: Digraph, backend: str = EXACT, seed: int = 0, n_sets: int = 5) -> list[Check]:
    """Evaluate every registered identity on ``g`` (assumed validated)."""
    n = g.n
    L = laplacian(g, backend)
    bundle = pinv_shift(L)
    rb = resistance_bundle(g, bundle, check=False)
    checks: list[Check] = []

    checks += verify_penrose(bundle)
    checks.append(equality("pinv_two_routes", "(L + J/n)^-1 - J/n = block formula",
                           bundle.Ldag, pinv_block(L)))
    checks.append(equality("tau_two_routes", "2 - sum r_ji = L diag(X) 1 + (2/n) 1",
                           rb.tau, tau_by_x(bundle)))
    checks += correction_checks(bundle, rb.tau)
    checks += structure_checks(bundle, rb)
    checks.append(equality("tau_quadratic_form", "tau'R tau = 2 x'Lx + (8/n) trace(L+)",
                           rb.tauRtau, quadratic_form_by_x(bundle)))
    checks.append(_inverse_check(bundle, rb))
    checks.append(equality("det_closed_form", "det R = (-1)^(n-1) 2^(n-3) tau'R tau / kappa",
                           det_closed_form(rb, n), det(rb.R)))
    checks += _metric_checks(rb.R)

    counts = tree_counts(laplacian(g))
    checks.append(Check("tree_count_roots", "kappa(G, i) independent of i",
                        len(set(counts)) == 1, witness=None if len(set(counts)) == 1 else counts))
    checks.append(check_tree_count_link(L, rb.kappa))

    rng = random.Random(seed)
    sets = [(IndexSet([1, 2]), IndexSet([1, 2]))] if n > 2 else []
    sets += random_index_sets(n, n_sets, rng)
    checks.append(_cofsum_checks(bundle, rb, sets))
    checks.append(reciprocal_sums(bundle, rb.R, rb.kappa))

    rev = resistance_matrix(pinv_shift(laplacian(reversal(g), backend)))
    checks.append(equality("reversal_duality", "R(reversal of G) = R'", rev, rb.R.T))
    return checks


def summarize(checks: list[Check], residuals: bool = False) -> dict:
    return {
        "passed": all(c.passed for c in checks),
        "checks": [c.as_dict(residuals) for c in checks],
    }

