from fractions import Fraction

import numpy as np
import pytest

from golden import (
    CYCLE3_R, CYCLE3_RINV, EXAMPLE1_CORRECTION, EXAMPLE1_DET, EXAMPLE1_R, EXAMPLE1_RINV,
    EXAMPLE1_TAU, EXAMPLE1_TAURTAU, EXAMPLE2_R, EXAMPLE4_R, EXAMPLE4_RINV,
)
from resist import matrix as mx
from resist.checks import InternalConsistencyError
from resist.digraph import Digraph, random_balanced, reversal
from resist.exact import FLOAT, parse_rational
from resist.laplacian import PreconditionError, laplacian, pinv_shift
from resist.resistance import (
    analyze,
    correction_row,
    metric_report,
    quadratic_form,
    resistance_det,
    resistance_inverse,
    resistance_matrix,
    structure_checks,
    tau,
    tau_by_x,
)

F = Fraction


def vec(items):
    return np.array([parse_rational(s) for s in items], dtype=object)


def same(a, b):
    return a.shape == b.shape and bool((a == b).all())


def test_example1_golden(example1):
    bundle, rb = analyze(example1)
    assert same(rb.R, mx.from_rows(EXAMPLE1_R))
    assert rb.R[1, 4] == F(5, 12) and rb.R[5, 0] == F(1, 3)
    assert same(rb.tau, vec(EXAMPLE1_TAU))
    assert same(rb.correction_row, vec(EXAMPLE1_CORRECTION))
    assert rb.tauRtau == parse_rational(EXAMPLE1_TAURTAU)
    assert rb.kappa == 2


def test_example1_inverse_and_det(example1):
    bundle, rb = analyze(example1)
    inv = resistance_inverse(bundle, rb)
    assert same(inv, mx.from_rows(EXAMPLE1_RINV))
    assert same(mx.inverse(rb.R), inv)
    assert inv[0, 0] == F(-185, 402) and inv[1, 1] == F(-93, 67)
    assert resistance_det(rb, 6) == parse_rational(EXAMPLE1_DET) == mx.det(rb.R)


def test_example4(example4):
    bundle, rb = analyze(example4)
    assert same(rb.R, mx.from_rows(EXAMPLE4_R))
    assert same(rb.tau, vec(["1/4", "3/4", "1/4", "3/4"]))
    assert rb.tauRtau == F(13, 4) and rb.kappa == 2
    assert resistance_det(rb, 4) == F(-13, 4)
    assert same(resistance_inverse(bundle, rb), mx.from_rows(EXAMPLE4_RINV))


def test_cycle3(cycle3):
    bundle, rb = analyze(cycle3)
    assert same(rb.R, mx.from_rows(CYCLE3_R))
    assert same(rb.tau, vec(["2/3"] * 3))
    assert rb.tauRtau == F(8, 3) and rb.kappa == 1
    assert resistance_det(rb, 3) == F(8, 3)
    assert same(resistance_inverse(bundle, rb), mx.from_rows(CYCLE3_RINV))


def test_pair(pair):
    bundle, rb = analyze(pair)
    assert same(rb.R, mx.from_rows([[0, 1], [1, 0]]))
    assert same(rb.tau, vec(["1", "1"])) and rb.tauRtau == 2
    # 2^(n-3) = 1/2 at n = 2
    assert resistance_det(rb, 2) == -1
    assert same(resistance_inverse(bundle, rb), mx.from_rows([[0, 1], [1, 0]]))


def test_example2_symmetric(example2):
    bundle, rb = analyze(example2)
    assert same(rb.R, mx.from_rows(EXAMPLE2_R))
    assert same(rb.R, rb.R.T)
    assert not (bundle.M != 0).any()
    # undirected inverse: -L/2 + tau tau' / (tau'R tau)
    expected = -bundle.L / 2 + np.outer(rb.tau, rb.tau) / rb.tauRtau
    assert same(resistance_inverse(bundle, rb), expected)


def test_tau_routes_and_sum(example1):
    bundle = pinv_shift(laplacian(example1))
    R = resistance_matrix(bundle)
    t = tau(example1, bundle, R)
    assert same(t, tau_by_x(bundle))
    assert sum(t) == 2


def test_tau_mismatch_raises(example1):
    bundle = pinv_shift(laplacian(example1))
    R = resistance_matrix(bundle)
    wrong = Digraph(6, example1.edges - {(1, 2)} | {(1, 3)})
    with pytest.raises(InternalConsistencyError):
        tau(wrong, bundle, R)


def test_quadratic_form_check(example1):
    bundle, rb = analyze(example1)
    assert quadratic_form(rb.R, rb.tau, bundle) == F(67, 12)
    with pytest.raises(InternalConsistencyError):
        quadratic_form(rb.R, rb.tau + F(1, 100), bundle)


def test_correction_row_cycle3(cycle3):
    bundle, rb = analyze(cycle3)
    # M of the directed 3-cycle is nonzero yet diag(L+) is constant, so the row equals tau
    assert (bundle.M != 0).any()
    assert same(correction_row(bundle, rb.tau), rb.tau)


def test_structure_checks_pass(example1, example4, cycle3):
    for g in (example1, example4, cycle3):
        bundle, rb = analyze(g)
        failed = [c.name for c in structure_checks(bundle, rb) if not c.passed]
        assert not failed


def test_random_identities():
    for seed in range(30):
        n = 3 + seed % 8
        g = random_balanced(n, 2 * n, seed)
        bundle, rb = analyze(g)
        one = np.ones(n, dtype=int)
        assert same(bundle.L @ rb.R + 2 * mx.eye(n), np.outer(rb.tau, one))
        assert same(rb.R @ rb.tau, rb.tauRtau / 2 * one)
        assert rb.tauRtau > 0
        assert resistance_det(rb, n) == mx.det(rb.R)
        assert same(resistance_inverse(bundle, rb), mx.inverse(rb.R))
        assert metric_report(rb.R).ok


def test_reversal_duality(example1):
    _, rb = analyze(example1)
    _, rev = analyze(reversal(example1))
    assert same(rev.R, rb.R.T)


def test_metric_report_detects_violations(example1):
    _, rb = analyze(example1)
    R = rb.R.copy()
    R[0, 1] = F(-1, 10)
    report = metric_report(R)
    assert report.positivity_violations == [(1, 2)]
    assert not report.ok
    R = rb.R.copy()
    R[0, 2] = F(100)
    assert (1, 2, 3) in metric_report(R).triangle_violations
    R = rb.R.copy()
    R[2, 2] = F(1, 7)
    assert metric_report(R).diagonal_violations == [(3,)]


def test_float_backend(example1):
    bundle, rb = analyze(example1, FLOAT)
    assert rb.R.dtype == float
    assert np.allclose(rb.R, mx.from_rows(EXAMPLE1_R).astype(float), rtol=1e-12, atol=1e-12)
    assert abs(resistance_det(rb, 6) + 67 / 3) < 1e-9
    assert np.allclose(resistance_inverse(bundle, rb),
                       mx.from_rows(EXAMPLE1_RINV).astype(float), atol=1e-12)


def test_rejects_invalid():
    with pytest.raises(PreconditionError):
        analyze(Digraph(4, frozenset({(1, 2), (2, 1), (3, 4), (4, 3)})))
