"""Dense matrices over the exact or float backend.

Matrices are numpy arrays: ``dtype=object`` of ``Fraction`` for the exact
backend, ``float64`` otherwise.  Index sets use 1-based vertex labels so that
the sign ``(-1)**(alpha(rows) + alpha(cols))`` in minor identities can be read
off the labels directly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exact import EXACT, FLOAT, backend_of, parse_rational, render, scalar


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    def __init__(self, stage: int, message: str | None = None):
        self.stage = stage
        super().__init__(message or f"matrix is singular (no pivot at elimination stage {stage})")


@dataclass(frozen=True)
class IndexSet:
    """Sorted set of distinct 1-based labels with cached sum and size."""

    labels: tuple[int, ...]
    alpha: int = field(init=False)
    eta: int = field(init=False)

    def __init__(self, labels: Iterable[int]):
        labels = tuple(int(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"repeated label in index set {labels}")
        if any(x < 1 for x in labels):
            raise IndexError(f"labels are 1-based, got {labels}")
        object.__setattr__(self, "labels", tuple(sorted(labels)))
        object.__setattr__(self, "alpha", sum(labels))
        object.__setattr__(self, "eta", len(labels))

    @classmethod
    def parse(cls, text: str) -> "IndexSet":
        return cls(int(tok) for tok in text.split(",") if tok.strip())

    @classmethod
    def full(cls, n: int) -> "IndexSet":
        return cls(range(1, n + 1))

    def complement(self, n: int) -> "IndexSet":
        self.check_bounds(n)
        return IndexSet(x for x in range(1, n + 1) if x not in self.labels)

    def check_bounds(self, n: int) -> None:
        if self.labels and self.labels[-1] > n:
            raise IndexError(f"label {self.labels[-1]} out of range 1..{n}")

    def zero_based(self) -> list[int]:
        return [x - 1 for x in self.labels]

    def __len__(self) -> int:
        return self.eta

    def __iter__(self):
        return iter(self.labels)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.labels)) + "}"


def _square(w: np.ndarray) -> int:
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {w.shape}")
    return w.shape[0]


def zeros(rows: int, cols: int, backend: str = EXACT) -> np.ndarray:
    if backend == EXACT:
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((rows, cols))


def eye(n: int, backend: str = EXACT) -> np.ndarray:
    out = zeros(n, n, backend)
    for i in range(n):
        out[i, i] = scalar(1, backend)
    return out


def ones(rows: int, cols: int = 1, backend: str = EXACT) -> np.ndarray:
    out = zeros(rows, cols, backend)
    out.fill(scalar(1, backend))
    return out


def all_ones(n: int, backend: str = EXACT) -> np.ndarray:
    """The n x n all-ones matrix J."""
    return ones(n, n, backend)


def diag_part(w: np.ndarray) -> np.ndarray:
    """diag(W): keep the diagonal of W, zero elsewhere."""
    n = _square(w)
    out = zeros(n, n, backend_of(w))
    for i in range(n):
        out[i, i] = w[i, i]
    return out


def from_rows(rows: Sequence[Sequence], backend: str = EXACT) -> np.ndarray:
    """Build a matrix from nested rows of ints, Fractions or rational strings."""

    def conv(v):
        if isinstance(v, str):
            v = parse_rational(v)
        return scalar(v, backend)

    data = [[conv(v) for v in row] for row in rows]
    if len({len(r) for r in data}) > 1:
        raise ShapeError("ragged rows")
    if backend == FLOAT:
        return np.array(data, dtype=float).reshape(len(data), -1)
    out = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def submatrix(w: np.ndarray, rows: IndexSet, cols: IndexSet) -> np.ndarray:
    """W[rows, cols] with rows and columns in ascending label order."""
    rows.check_bounds(w.shape[0])
    cols.check_bounds(w.shape[1])
    return w[np.ix_(rows.zero_based(), cols.zero_based())]


def delete(w: np.ndarray, rows: Iterable[int], cols: Iterable[int]) -> np.ndarray:
    """W with the given 1-based rows and columns removed."""
    n_rows, n_cols = w.shape
    rows, cols = set(rows), set(cols)
    keep_r = [i for i in range(n_rows) if i + 1 not in rows]
    keep_c = [j for j in range(n_cols) if j + 1 not in cols]
    return w[np.ix_(keep_r, keep_c)]


def _det_bareiss(w: np.ndarray) -> Fraction:
    n = w.shape[0]
    a = [list(row) for row in w]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pivot
    return sign * Fraction(a[n - 1][n - 1])


def _det_float(w: np.ndarray) -> float:
    a = np.array(w, dtype=float)
    n = a.shape[0]
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0.0:
            return 0.0
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        det *= a[k, k]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return float(det)


def det(w: np.ndarray):
    """Determinant: fraction-free Bareiss elimination (exact) or partial pivoting (float)."""
    n = _square(w)
    if n == 0:
        return scalar(1, backend_of(w))
    if backend_of(w) == EXACT:
        return _det_bareiss(w)
    return _det_float(w)


def inverse(w: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse; raises SingularMatrixError instead of regularizing."""
    n = _square(w)
    backend = backend_of(w)
    exact = backend == EXACT
    a = [list(row) for row in w]
    b = [list(row) for row in eye(n, backend)]
    for k in range(n):
        if exact:
            p = next((r for r in range(k, n) if a[r][k] != 0), None)
        else:
            p = max(range(k, n), key=lambda r: abs(a[r][k]))
            if a[p][k] == 0.0:
                p = None
        if p is None:
            raise SingularMatrixError(k + 1)
        if p != k:
            a[k], a[p] = a[p], a[k]
            b[k], b[p] = b[p], b[k]
        inv_piv = 1 / a[k][k]
        a[k] = [v * inv_piv for v in a[k]]
        b[k] = [v * inv_piv for v in b[k]]
        for i in range(n):
            f = a[i][k]
            if i == k or f == 0:
                continue
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
            b[i] = [x - f * y for x, y in zip(b[i], b[k])]
    return from_rows(b, backend) if exact else np.array(b, dtype=float)


def adjugate(w: np.ndarray) -> np.ndarray:
    """Classical adjoint by cofactors; defined for singular W as well."""
    n = _square(w)
    backend = backend_of(w)
    out = zeros(n, n, backend)
    if n == 1:
        out[0, 0] = scalar(1, backend)
        return out
    for i in range(n):
        for j in range(n):
            minor = det(delete(w, [i + 1], [j + 1]))
            out[j, i] = minor if (i + j) % 2 == 0 else -minor
    return out


def bordered(w: np.ndarray, beta=1) -> np.ndarray:
    """[[W, 1/beta], [1'/beta, 0]]."""
    n = _square(w)
    backend = backend_of(w)
    b = scalar(Fraction(1) / Fraction(beta), backend) if backend == EXACT else 1.0 / beta
    out = zeros(n + 1, n + 1, backend)
    out[:n, :n] = w
    out[:n, n] = b
    out[n, :n] = b
    return out


def cofsum(w: np.ndarray):
    """Sum of all cofactors, 1' adj(W) 1, as minus the bordered determinant (beta = 1)."""
    _square(w)
    return -det(bordered(w))


def cofsum_adjugate(w: np.ndarray):
    """Reference route for cofsum: sum the explicit adjugate."""
    adj = adjugate(w)
    total = scalar(0, backend_of(w))
    for v in adj.flat:
        total += v
    return total


def symmetric_pivots(w: np.ndarray, tol: float = 0.0) -> list:
    """Pivots of LDL' elimination with symmetric (diagonal) pivoting.

    W must be symmetric.  At each stage the largest remaining diagonal entry
    is used.  When every remaining diagonal entry is zero (within ``tol``), the
    leftover block must vanish for W to be positive semidefinite; if it does
    not, a ``-1`` pivot is appended as the witness.  W is PSD iff every
    returned pivot is >= 0.
    """
    n = _square(w)
    exact = backend_of(w) == EXACT
    a = [list(row) for row in w]
    active = list(range(n))
    pivots = []
    while active:
        p = max(active, key=lambda i: a[i][i])
        piv = a[p][p]
        if (piv == 0) if exact else (abs(piv) <= tol):
            leftover = any(
                ((a[i][j] != 0) if exact else (abs(a[i][j]) > tol))
                for i in active for j in active
            )
            pivots.extend([piv] * len(active))
            if leftover:
                pivots.append(scalar(-1, EXACT if exact else FLOAT))
            return pivots
        pivots.append(piv)
        if piv < 0:
            return pivots
        active.remove(p)
        for i in active:
            f = a[i][p] / piv
            if f == 0:
                continue
            for j in active:
                a[i][j] -= f * a[p][j]
    return pivots


def is_psd(w: np.ndarray, tol: float = 0.0) -> bool:
    return all(p >= (0 if backend_of(w) == EXACT else -tol) for p in symmetric_pivots(w, tol))


# serialization -----------------------------------------------------------


def _encode(v):
    if isinstance(v, (Fraction, int)):
        return render(v)
    return float(v)


def to_json(w: np.ndarray) -> str:
    """Row-major JSON 2-D array; exact entries as ``"p/q"`` strings."""
    return json.dumps([[_encode(v) for v in row] for row in w])


def from_json(text: str) -> np.ndarray:
    rows = json.loads(text)
    if all(isinstance(v, str) for row in rows for v in row):
        return from_rows(rows, EXACT)
    return from_rows([[float(v) for v in row] for row in rows], FLOAT)


def to_csv(w: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in w:
        writer.writerow([_encode(v) for v in row])
    return buf.getvalue()


def from_csv(text: str) -> np.ndarray:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    try:
        return from_rows(rows, EXACT)
    except ValueError:
        return from_rows([[float(v) for v in row] for row in rows], FLOAT)
