"""Result records shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .exact import allclose, backend_of, residual


class InternalConsistencyError(AssertionError):
    """Two independent routes to the same quantity disagreed."""


@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    residual: float = 0.0
    witness: Any = None

    def as_dict(self, with_residual: bool = False) -> dict:
        d = {"name": self.name, "anchor": self.anchor,
             "status": "pass" if self.passed else "fail"}
        if with_residual:
            d["max_relative_residual"] = self.residual
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def equality(name: str, anchor: str, lhs, rhs) -> Check:
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    return Check(name, anchor, allclose(lhs, rhs), residual(lhs, rhs))


def require_equal(what: str, lhs, rhs) -> None:
    if not allclose(np.asarray(lhs), np.asarray(rhs)):
        raise InternalConsistencyError(
            f"{what}: routes disagree (relative residual {residual(lhs, rhs):.3e}, "
            f"backend {backend_of(lhs)})"
        )
