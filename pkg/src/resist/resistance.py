"""Resistance matrix R, the tau vector, the closed-form inverse and determinant."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .checks import Check, InternalConsistencyError, equality, require_equal
from .cofactors import kappa
from .digraph import Digraph
from .exact import EXACT, FLOAT, RTOL, scalar
from .laplacian import LaplacianBundle, PreconditionError, laplacian, pinv_shift
from .matrix import all_ones, det, diag_part, eye, inverse


@dataclass(frozen=True)
class ResistanceBundle:
    R: np.ndarray
    tau: np.ndarray
    tauRtau: object
    correction_row: np.ndarray
    kappa: int


@dataclass
class MetricReport:
    positivity_violations: list = field(default_factory=list)
    triangle_violations: list = field(default_factory=list)
    diagonal_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.positivity_violations or self.triangle_violations
                    or self.diagonal_violations)


def resistance_matrix(bundle: LaplacianBundle) -> np.ndarray:
    """R(i, j) = L+(i, i) + L+(j, j) - 2 L+(i, j)."""
    P = bundle.Ldag
    n = bundle.n
    R = P.copy()
    for i in range(n):
        for j in range(n):
            R[i, j] = P[i, i] + P[j, j] - 2 * P[i, j]
    return R


def tau_by_edges(g: Digraph, R: np.ndarray) -> np.ndarray:
    """tau_i = 2 - sum of R(j, i) over out-neighbours j of i."""
    exact = R.dtype == object
    two = Fraction(2) if exact else 2.0
    return np.array(
        [two - sum((R[j - 1, i - 1] for j in g.successors(i)), two - two)
         for i in range(1, g.n + 1)],
        dtype=R.dtype,
    )


def tau_by_x(bundle: LaplacianBundle) -> np.ndarray:
    """L diag(X) 1 + (2/n) 1."""
    return bundle.L @ bundle.xdiag + scalar(2, bundle.backend) / bundle.n


def tau(g: Digraph, bundle: LaplacianBundle, R: np.ndarray) -> np.ndarray:
    """The tau vector, computed from the edges of g and from diag(X); the two must agree."""
    by_edges = tau_by_edges(g, R)
    require_equal("tau", by_edges, tau_by_x(bundle))
    return by_edges


def quadratic_form_by_x(bundle: LaplacianBundle):
    """2 x'Lx + (8/n) trace(L+) with x = diag(X)."""
    x = bundle.xdiag
    trace = sum(bundle.Ldag[i, i] for i in range(bundle.n))
    return 2 * (x @ bundle.L @ x) + scalar(8, bundle.backend) / bundle.n * trace


def quadratic_form(R: np.ndarray, t: np.ndarray, bundle: LaplacianBundle):
    """tau' R tau, checked against its expression through diag(X) and trace(L+)."""
    value = t @ R @ t
    require_equal("tau'R tau", value, quadratic_form_by_x(bundle))
    return value


def correction_checks(bundle: LaplacianBundle, t: np.ndarray) -> list[Check]:
    n = bundle.n
    one = np.ones(n, dtype=int)
    via_ldag = one @ diag_part(bundle.Ldag) @ bundle.M
    via_x = one @ bundle.Xdiag @ bundle.M
    return [
        equality("correction_diag_swap", "1' diag(X) M = 1' diag(L+) M", via_x, via_ldag),
        equality("correction_identity", "tau' + 1' diag(X) M = 1' diag(X) L + (2/n) 1'",
                 t + via_x, one @ bundle.Xdiag @ bundle.L + scalar(2, bundle.backend) / n * one),
    ]


def correction_row(bundle: LaplacianBundle, t: np.ndarray) -> np.ndarray:
    """tau' + 1' diag(L+) M."""
    for check in correction_checks(bundle, t):
        if not check.passed:
            raise InternalConsistencyError(f"{check.anchor} fails (residual {check.residual:.3e})")
    one = np.ones(bundle.n, dtype=int)
    return t + one @ diag_part(bundle.Ldag) @ bundle.M


def inverse_closed_form(bundle: LaplacianBundle, rb: ResistanceBundle) -> np.ndarray:
    """-L/2 + tau (tau' + 1' diag(L+) M) / (tau' R tau)."""
    return -bundle.L / 2 + np.outer(rb.tau, rb.correction_row) / rb.tauRtau


def resistance_inverse(bundle: LaplacianBundle, rb: ResistanceBundle) -> np.ndarray:
    """Closed-form inverse of R, checked against Gauss-Jordan inversion of R."""
    closed = inverse_closed_form(bundle, rb)
    require_equal("inverse of R", closed, inverse(rb.R))
    return closed


def det_closed_form(rb: ResistanceBundle, n: int):
    """(-1)^(n-1) 2^(n-3) tau'R tau / kappa; 2^(n-3) stays rational for n = 2."""
    backend = EXACT if isinstance(rb.tauRtau, Fraction) else FLOAT
    return scalar((-1) ** (n - 1) * Fraction(2) ** (n - 3) / rb.kappa, backend) * rb.tauRtau


def resistance_det(rb: ResistanceBundle, n: int):
    """Closed-form det(R), checked against elimination."""
    value = det_closed_form(rb, n)
    require_equal("det(R)", value, det(rb.R))
    return value


def metric_report(R: np.ndarray, tol: float | None = None) -> MetricReport:
    """Zero diagonal, positive off-diagonal entries, and r_ik <= r_ij + r_jk for all triples."""
    n = R.shape[0]
    exact = R.dtype == object
    if tol is None:
        tol = 0.0 if exact else RTOL * max(1.0, float(np.max(np.abs(R))))
    report = MetricReport()
    for i in range(n):
        if (R[i, i] != 0) if exact else abs(R[i, i]) > tol:
            report.diagonal_violations.append((i + 1,))
        for j in range(n):
            if i != j and not R[i, j] > 0:
                report.positivity_violations.append((i + 1, j + 1))
    slack = 0 if exact else tol
    for i in range(n):
        for j in range(n):
            rij = R[i, j]
            for k in range(n):
                if R[i, k] > rij + R[j, k] + slack:
                    report.triangle_violations.append((i + 1, j + 1, k + 1))
    return report


def resistance_bundle(g: Digraph, bundle: LaplacianBundle, check: bool = True) -> ResistanceBundle:
    """Assemble R, tau, tau'R tau, the correction row and kappa.

    With ``check=False`` the internal two-route assertions are skipped so that
    a verification pass can report disagreements instead of raising.
    """
    R = resistance_matrix(bundle)
    if check:
        t = tau(g, bundle, R)
        trt = quadratic_form(R, t, bundle)
        if not trt > 0:
            raise PreconditionError(f"tau'R tau = {trt} is not positive")
        row = correction_row(bundle, t)
    else:
        t = tau_by_edges(g, R)
        trt = t @ R @ t
        row = t + np.ones(bundle.n, dtype=int) @ diag_part(bundle.Ldag) @ bundle.M
    return ResistanceBundle(R, t, trt, row, kappa(laplacian(g)))


def analyze(g: Digraph, backend: str = EXACT,
            check: bool = True) -> tuple[LaplacianBundle, ResistanceBundle]:
    """Laplacian and resistance bundles for a validated graph."""
    if g.n < 2:
        raise PreconditionError("resistance needs at least two vertices")
    bundle = pinv_shift(laplacian(g, backend))
    return bundle, resistance_bundle(g, bundle, check)


def structure_checks(bundle: LaplacianBundle, rb: ResistanceBundle) -> list[Check]:
    """Matrix identities linking L, R, tau and diag(X)."""
    n = bundle.n
    backend = bundle.backend
    L, R, t = bundle.L, rb.R, rb.tau
    I = eye(n, backend)
    J = all_ones(n, backend)
    one = np.ones(n, dtype=int)
    return [
        equality("LR_identity", "LR + 2I = tau 1'", L @ R + 2 * I, np.outer(t, one)),
        equality("RL_identity", "RL + 2I = 1 tau' + J diag(X) M",
                 R @ L + 2 * I, np.outer(one, t) + J @ bundle.Xdiag @ bundle.M),
        equality("tau_sum", "1' tau = 2", one @ t, scalar(2, backend)),
        Check("tau_quadratic_positive", "tau'R tau > 0", bool(rb.tauRtau > 0)),
        equality("R_tau_constant", "R tau = (tau'R tau / 2) 1", R @ t,
                 rb.tauRtau / 2 * np.ones(n, dtype=int)),
    ]
