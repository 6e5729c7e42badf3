"""Laplacian L = Diag(A1) - A and its Moore-Penrose inverse, by two routes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import Check, equality
from .digraph import Digraph
from .exact import EXACT, RTOL, backend_of, to_backend
from .matrix import SingularMatrixError, all_ones, eye, inverse, is_psd, zeros


class PreconditionError(ValueError):
    """Input does not come from a balanced, strongly connected digraph."""


@dataclass(frozen=True)
class LaplacianBundle:
    L: np.ndarray
    Ldag: np.ndarray
    X: np.ndarray
    xdiag: np.ndarray
    M: np.ndarray

    @property
    def n(self) -> int:
        return self.L.shape[0]

    @property
    def backend(self) -> str:
        return backend_of(self.L)

    @property
    def Xdiag(self) -> np.ndarray:
        """diag(X) as a diagonal matrix."""
        d = zeros(self.n, self.n, self.backend)
        for i, v in enumerate(self.xdiag):
            d[i, i] = v
        return d


def laplacian(g: Digraph, backend: str = EXACT) -> np.ndarray:
    a = g.adjacency()
    lap = np.diag(a.sum(axis=1)) - a
    return to_backend(lap, backend)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def pinv_shift(L: np.ndarray) -> LaplacianBundle:
    """L^+ = (L + J/n)^-1 - J/n, valid when L1 = L'1 = 0 and rank L = n - 1."""
    n = L.shape[0]
    backend = backend_of(L)
    jn = all_ones(n, backend) / n
    try:
        X = inverse(L + jn)
    except SingularMatrixError as exc:
        raise PreconditionError(
            "L + J/n is singular: graph is not balanced and strongly connected"
        ) from exc
    Ldag = X - jn
    xdiag = np.array([X[i, i] for i in range(n)], dtype=X.dtype)
    return LaplacianBundle(
        _frozen(L.copy()), _frozen(Ldag), _frozen(X), _frozen(xdiag), _frozen(L - L.T)
    )


def pinv_block(L: np.ndarray) -> np.ndarray:
    """L^+ assembled from the inverse of the leading (n-1) x (n-1) block of L.

    With B the leading block, C = B^-1, e = 1_{n-1} and J the n x n all-ones
    matrix::

        L^+ = [[C - ee'C/n - Cee'/n, -Ce/n], [-e'C/n, 0]] + (e'Ce/n^2) J
    """
    n = L.shape[0]
    backend = backend_of(L)
    B = L[: n - 1, : n - 1]
    try:
        C = inverse(B)
    except SingularMatrixError as exc:
        raise PreconditionError("leading block of L is singular") from exc
    e = np.ones(n - 1, dtype=int)
    x = C @ e
    y = e @ C
    total = e @ x
    out = zeros(n, n, backend)
    out[: n - 1, : n - 1] = C - (np.outer(e, y) + np.outer(x, e)) / n
    out[: n - 1, n - 1] = -x / n
    out[n - 1, : n - 1] = -y / n
    return out + all_ones(n, backend) * total / (n * n)


def verify_penrose(bundle: LaplacianBundle) -> list[Check]:
    L, P = bundle.L, bundle.Ldag
    n = bundle.n
    backend = bundle.backend
    proj = eye(n, backend) - all_ones(n, backend) / n
    one = np.ones(n, dtype=int)
    zero_vec = zeros(n, 1, backend)[:, 0]
    trace = sum(P[i, i] for i in range(n))
    sym = P + P.T
    tol = 0.0 if backend == EXACT else RTOL * max(1.0, float(np.max(np.abs(sym.astype(float)))))
    return [
        equality("penrose_LPL", "L L+ L = L", L @ P @ L, L),
        equality("penrose_PLP", "L+ L L+ = L+", P @ L @ P, P),
        equality("projector_right", "L L+ = I - J/n", L @ P, proj),
        equality("projector_left", "L+ L = I - J/n", P @ L, proj),
        equality("null_right", "L+ 1 = 0", P @ one, zero_vec),
        equality("null_left", "(L+)' 1 = 0", P.T @ one, zero_vec),
        Check("trace_positive", "trace(L+) > 0", bool(trace > 0), witness=None if trace > 0 else str(trace)),
        Check("sym_part_psd", "L+ + (L+)' positive semidefinite", is_psd(sym, tol)),
    ]
