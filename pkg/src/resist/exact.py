"""Scalar layer: exact rationals (``fractions.Fraction``) and IEEE doubles.

Every matrix carries one backend for its whole lifetime.  Exact matrices are
numpy arrays of ``dtype=object`` holding ``Fraction`` entries; float matrices
are plain ``float64`` arrays.
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

# float comparisons: |a - b| <= max(RTOL * scale, ATOL)
RTOL = 1e-9
ATOL = 1e-12

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class RationalParseError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a canonical Fraction.

    Only an optional leading minus and decimal digits are accepted; spaces,
    signs on the denominator, decimals and exponents are rejected.
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalParseError(f"malformed rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise RationalParseError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den))


def render(x) -> str:
    """Canonical text for a scalar: ``p/q`` (``p`` when q == 1) or a float repr."""
    if isinstance(x, (Fraction, int, np.integer)):
        return str(Fraction(x))
    return repr(float(x))


def backend_of(a) -> str:
    a = np.asarray(a)
    return EXACT if a.dtype == object else FLOAT


def to_backend(a, backend: str) -> np.ndarray:
    """Convert an array-like of numbers to the requested backend."""
    a = np.asarray(a)
    if backend == EXACT:
        if a.dtype == object:
            return a.copy()
        if a.dtype.kind == "f":
            raise TypeError("refusing to convert float data to exact rationals")
        out = np.empty(a.shape, dtype=object)
        out.flat = [Fraction(int(v)) for v in a.flat]
        return out
    if backend == FLOAT:
        return np.array([float(v) for v in a.flat], dtype=float).reshape(a.shape)
    raise ValueError(f"unknown backend {backend!r}")


def zero(backend: str):
    return Fraction(0) if backend == EXACT else 0.0


def one(backend: str):
    return Fraction(1) if backend == EXACT else 1.0


def scalar(value, backend: str):
    """Coerce an int or Fraction constant into the backend's scalar type."""
    return Fraction(value) if backend == EXACT else float(value)


def isclose(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= max(RTOL * max(abs(a), abs(b)), ATOL)


def residual(lhs, rhs) -> float:
    """Max-norm relative residual of ``lhs - rhs``.

    The scale is floored at ``ATOL / RTOL`` so that ``residual <= RTOL`` is
    equivalent to the tolerance rule used by :func:`isclose`.  Exact inputs
    that agree give exactly 0.0.
    """
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    if lhs.shape != rhs.shape:
        raise ValueError(f"shape mismatch {lhs.shape} vs {rhs.shape}")
    if lhs.size == 0:
        return 0.0
    diff = max(abs(float(d)) for d in np.asarray(lhs - rhs).flat)
    if diff == 0.0:
        return 0.0
    scale = max(max(abs(float(v)) for v in lhs.flat), max(abs(float(v)) for v in rhs.flat))
    return diff / max(scale, ATOL / RTOL)


def allclose(lhs, rhs) -> bool:
    """Literal equality for exact arrays, tolerance rule for float arrays."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    if lhs.shape != rhs.shape:
        return False
    if lhs.dtype == object and rhs.dtype == object:
        return all(x == y for x, y in zip(lhs.flat, rhs.flat))
    return residual(lhs, rhs) <= RTOL
