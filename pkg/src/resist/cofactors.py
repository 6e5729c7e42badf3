"""Oriented spanning tree counts and cofactor-sum identities.

Index sets are 1-based and ``alpha`` is the sum of their labels.  Only the
parity of ``alpha(rows) + alpha(cols)`` enters the signs; it is the same
for 0-based labels because both sums shift by ``eta``, but mixing a 0-based
set with a 1-based one flips it whenever ``eta`` is odd.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .checks import Check, equality, require_equal
from .digraph import Digraph
from .exact import allclose, backend_of, isclose, residual, scalar
from .laplacian import LaplacianBundle, PreconditionError, pinv_shift
from .matrix import IndexSet, all_ones, cofsum, delete, det, diag_part, eye, submatrix

BRUTEFORCE_MAX_N = 10


class SizeLimitError(ValueError):
    pass


def _as_count(value) -> int:
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise PreconditionError(f"tree count {value} is not an integer; L is invalid")
        return int(value)
    rounded = round(float(value))
    if not isclose(float(value), float(rounded)):
        raise PreconditionError(f"tree count {value!r} is not an integer; L is invalid")
    return int(rounded)


def kappa_matrix_tree(L: np.ndarray, root: int) -> int:
    """Number of oriented spanning trees rooted at ``root`` (1-based): det of L without row/col root."""
    n = L.shape[0]
    if not 1 <= root <= n:
        raise IndexError(f"root {root} out of range 1..{n}")
    return _as_count(det(delete(L, [root], [root])))


def kappa_bruteforce(g: Digraph, root: int) -> int:
    """Count oriented spanning trees rooted at ``root`` by enumeration.

    Every non-root vertex picks one out-edge; the choice is kept when following
    the picks from any vertex ends at the root.  Picks are made vertex by vertex
    and a branch is cut as soon as it closes a cycle.
    """
    if g.n > BRUTEFORCE_MAX_N:
        raise SizeLimitError(
            f"brute-force enumeration is limited to n <= {BRUTEFORCE_MAX_N} (got n={g.n})"
        )
    if not 1 <= root <= g.n:
        raise IndexError(f"root {root} out of range 1..{g.n}")
    others = [v for v in range(1, g.n + 1) if v != root]
    choices = {v: g.successors(v) for v in others}
    if any(not c for c in choices.values()):
        return 0
    parent: dict[int, int] = {}

    def closes_cycle(v: int) -> bool:
        w = parent[v]
        while w in parent:
            if w == v:
                return True
            w = parent[w]
        return False

    def count(k: int) -> int:
        if k == len(others):
            return 1
        v = others[k]
        total = 0
        for w in choices[v]:
            parent[v] = w
            if not closes_cycle(v):
                total += count(k + 1)
        del parent[v]
        return total

    return count(0)


def tree_counts(L: np.ndarray) -> list[int]:
    """kappa(G, i) for every root i."""
    return [kappa_matrix_tree(L, i) for i in range(1, L.shape[0] + 1)]


def kappa(L: np.ndarray) -> int:
    """Common tree count; raises when the per-root counts differ."""
    counts = tree_counts(L)
    if len(set(counts)) != 1:
        raise PreconditionError(f"per-root tree counts differ: {counts}")
    return counts[0]


def _sign(*exponents: int) -> int:
    return -1 if sum(exponents) % 2 else 1


def _check_sets(n: int, rows: IndexSet, cols: IndexSet) -> None:
    rows.check_bounds(n)
    cols.check_bounds(n)
    if rows.eta != cols.eta:
        raise ValueError(f"index sets differ in size: {rows} vs {cols}")
    if rows.eta == 0:
        raise ValueError("index sets must be nonempty")
    if rows.eta == n:
        raise ValueError("complement of the index set is empty")


def _check_doubly_null(S: np.ndarray) -> None:
    n = S.shape[0]
    one = np.ones(n, dtype=int)
    zero = np.zeros(n, dtype=int)
    if not (allclose(S @ one, zero) and allclose(S.T @ one, zero)):
        raise PreconditionError("S1 = S'1 = 0 does not hold")


def common_cofactor(S: np.ndarray):
    """Shared cofactor of a doubly-null S: cofsum(S) / n^2.  Zero iff rank S < n - 1."""
    n = S.shape[0]
    return cofsum(S) / (n * n)


def cofsum_general(S: np.ndarray, rows: IndexSet, cols: IndexSet, Sdag: np.ndarray | None = None):
    """cofsum(S[rows, cols]) for doubly-null S of rank n - 1, checked against
    ``(-1)^(alpha(rows)+alpha(cols)) n^2 gamma det(S^+[cols^c, rows^c])``."""
    n = S.shape[0]
    _check_sets(n, rows, cols)
    _check_doubly_null(S)
    gamma = common_cofactor(S)
    if gamma == 0:
        raise PreconditionError("rank(S) < n - 1")
    if Sdag is None:
        Sdag = pinv_shift(S).Ldag
    direct = cofsum(submatrix(S, rows, cols))
    closed = _sign(rows.alpha, cols.alpha) * n * n * gamma * det(
        submatrix(Sdag, cols.complement(n), rows.complement(n))
    )
    require_equal(f"cofsum of S[{rows},{cols}]", direct, closed)
    return direct


def cofsum_projection_invariance(A: np.ndarray, rows: IndexSet, cols: IndexSet) -> list[Check]:
    """cofsum is unchanged by S = P A P with P = I - J/n, on A and on A[rows, cols]."""
    n = A.shape[0]
    backend = backend_of(A)
    P = eye(n, backend) - all_ones(n, backend) / n
    S = P @ A @ P
    return [
        equality("cofsum_full", "cofsum(A) = cofsum(PAP)", cofsum(A), cofsum(S)),
        equality(
            "cofsum_block",
            f"cofsum(A[{rows},{cols}]) = cofsum(PAP[{rows},{cols}])",
            cofsum(submatrix(A, rows, cols)),
            cofsum(submatrix(S, rows, cols)),
        ),
    ]


def distance_like(S: np.ndarray) -> np.ndarray:
    """D = diag(S) J + J diag(S) - 2 S."""
    n = S.shape[0]
    J = all_ones(n, backend_of(S))
    d = diag_part(S)
    return d @ J + J @ d - 2 * S


def dmatrix_cofsum(S: np.ndarray, rows: IndexSet, cols: IndexSet, Sdag: np.ndarray | None = None):
    """cofsum(D[rows, cols]) for D built from S, checked against
    ``(-1)^(alpha1+alpha2+eta-1) 2^(eta-1) n^2 gamma det(S^+[cols^c, rows^c])``."""
    n = S.shape[0]
    _check_sets(n, rows, cols)
    _check_doubly_null(S)
    gamma = common_cofactor(S)
    if gamma == 0:
        raise PreconditionError("rank(S) < n - 1")
    if Sdag is None:
        Sdag = pinv_shift(S).Ldag
    eta = rows.eta
    direct = cofsum(submatrix(distance_like(S), rows, cols))
    closed = (
        _sign(rows.alpha, cols.alpha, eta - 1) * 2 ** (eta - 1) * n * n * gamma
        * det(submatrix(Sdag, cols.complement(n), rows.complement(n)))
    )
    require_equal(f"cofsum of D[{rows},{cols}]", direct, closed)
    return direct


def resistance_cofsum_closed(bundle: LaplacianBundle, tree_count: int,
                             rows: IndexSet, cols: IndexSet):
    """(-1)^(alpha1+alpha2+eta-1) (2^(eta-1) / kappa) det(L[cols^c, rows^c])."""
    n = bundle.n
    _check_sets(n, rows, cols)
    eta = rows.eta
    return _sign(rows.alpha, cols.alpha, eta - 1) * scalar(
        Fraction(2 ** (eta - 1), tree_count), bundle.backend
    ) * det(submatrix(bundle.L, cols.complement(n), rows.complement(n)))


def resistance_cofsum(bundle: LaplacianBundle, R: np.ndarray, tree_count: int,
                      rows: IndexSet, cols: IndexSet):
    """cofsum(R[rows, cols]), checked against the closed form through L and kappa."""
    closed = resistance_cofsum_closed(bundle, tree_count, rows, cols)
    direct = cofsum(submatrix(R, rows, cols))
    require_equal(f"cofsum of R[{rows},{cols}]", direct, closed)
    return direct


def reciprocal_sums(bundle: LaplacianBundle, R: np.ndarray, tree_count: int) -> Check:
    """r_ij + r_ji = (2 / kappa) det(L without rows/cols i, j) for every pair i < j."""
    n = bundle.n
    worst = 0.0
    failed = None
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = R[i - 1, j - 1] + R[j - 1, i - 1]
            rhs = scalar(Fraction(2, tree_count), bundle.backend) * det(delete(bundle.L, [i, j], [i, j]))
            worst = max(worst, residual(lhs, rhs))
            if not allclose(lhs, rhs) and failed is None:
                failed = [i, j]
    return Check("reciprocal_sum", "r_ij + r_ji = (2/kappa) det(L[{i,j}^c,{i,j}^c])",
                 failed is None, worst, failed)


def check_tree_count_link(L: np.ndarray, tree_count: int) -> Check:
    """cofsum(L) = n^2 kappa."""
    n = L.shape[0]
    return equality("cofsum_laplacian", "cofsum(L) = n^2 kappa", cofsum(L),
                    scalar(n * n * tree_count, backend_of(L)))

