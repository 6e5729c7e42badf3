import random
from fractions import Fraction

import numpy as np
import pytest

from resist import matrix as mx
from resist.checks import InternalConsistencyError
from resist.cofactors import (
    BRUTEFORCE_MAX_N,
    SizeLimitError,
    check_tree_count_link,
    cofsum_general,
    cofsum_projection_invariance,
    common_cofactor,
    distance_like,
    dmatrix_cofsum,
    kappa,
    kappa_bruteforce,
    kappa_matrix_tree,
    reciprocal_sums,
    resistance_cofsum,
    resistance_cofsum_closed,
    tree_counts,
)
from resist.digraph import Digraph, embed_undirected, random_balanced
from resist.laplacian import PreconditionError, laplacian, pinv_shift
from resist.matrix import IndexSet
from resist.resistance import analyze

F = Fraction
S12, S14 = IndexSet([1, 2]), IndexSet([1, 4])


def cycle(n):
    return Digraph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))


def test_kappa_examples(example1, example4, cycle3):
    assert kappa_matrix_tree(laplacian(example1), 1) == 2
    assert kappa_bruteforce(example1, 1) == 2
    assert kappa_matrix_tree(laplacian(example4), 4) == 2
    assert kappa_bruteforce(example4, 4) == 2
    assert kappa_bruteforce(cycle3, 2) == 1
    for n in (2, 5, 9):
        assert tree_counts(laplacian(cycle(n))) == [1] * n


def test_kappa_common_value(example1, example2):
    assert tree_counts(laplacian(example1)) == [2] * 6
    assert kappa(laplacian(example1)) == 2
    # example2 is an undirected graph, so kappa is its spanning tree count
    assert kappa(laplacian(example2)) == 21


def test_kappa_bruteforce_complete_graph():
    # Cayley: n^(n-2) spanning trees, each orientable toward any root in one way
    k5 = embed_undirected(5, [(i, j) for i in range(1, 6) for j in range(i + 1, 6)])
    assert kappa_bruteforce(k5, 3) == 125 == kappa_matrix_tree(laplacian(k5), 3)


def test_kappa_bruteforce_random():
    for seed in range(40):
        n = 3 + seed % 6
        g = random_balanced(n, n, seed)
        L = laplacian(g)
        for root in range(1, n + 1):
            assert kappa_bruteforce(g, root) == kappa_matrix_tree(L, root)


def test_kappa_size_guard():
    with pytest.raises(SizeLimitError, match=str(BRUTEFORCE_MAX_N)):
        kappa_bruteforce(cycle(BRUTEFORCE_MAX_N + 1), 1)
    with pytest.raises(IndexError):
        kappa_matrix_tree(laplacian(cycle(3)), 4)


def test_kappa_disconnected_is_zero():
    g = Digraph(4, frozenset({(1, 2), (2, 1), (3, 4), (4, 3)}))
    assert kappa_bruteforce(g, 1) == 0 == kappa_matrix_tree(laplacian(g), 1)


def test_kappa_non_integer_rejected():
    L = mx.from_rows([["1/2", "-1/2"], ["-1/2", "1/2"]])
    with pytest.raises(PreconditionError):
        kappa_matrix_tree(L, 1)


def test_tree_count_link(example1, example4):
    assert mx.cofsum(laplacian(example1)) == 72
    assert mx.cofsum(laplacian(example4)) == 32
    assert check_tree_count_link(laplacian(example1), 2).passed
    assert not check_tree_count_link(laplacian(example1), 3).passed


def test_common_cofactor(example1):
    L = laplacian(example1)
    assert common_cofactor(L) == 2
    assert common_cofactor(mx.all_ones(3) - 3 * mx.eye(3)) == 3
    two_blocks = mx.from_rows([[1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1]])
    assert common_cofactor(two_blocks) == 0


def test_cofsum_general_examples(example1, example4):
    assert cofsum_general(laplacian(example1), IndexSet([1]), IndexSet([1])) == 1
    triangle = 3 * mx.eye(3) - mx.all_ones(3)
    direct = mx.cofsum_adjugate(mx.submatrix(triangle, S12, IndexSet([1, 3])))
    assert cofsum_general(triangle, S12, IndexSet([1, 3])) == direct
    L4 = laplacian(example4)
    assert cofsum_general(L4, S12, S14) == mx.cofsum_adjugate(mx.submatrix(L4, S12, S14))


def test_cofsum_general_random():
    rng = random.Random(11)
    for seed in range(20):
        n = 3 + seed % 6
        L = laplacian(random_balanced(n, n, seed))
        eta = rng.randint(1, n - 1)
        rows = IndexSet(rng.sample(range(1, n + 1), eta))
        cols = IndexSet(rng.sample(range(1, n + 1), eta))
        assert cofsum_general(L, rows, cols) == mx.cofsum_adjugate(mx.submatrix(L, rows, cols))


def test_cofsum_general_preconditions(example1):
    L = laplacian(example1)
    with pytest.raises(ValueError):
        cofsum_general(L, IndexSet([1]), S12)
    with pytest.raises(ValueError):
        cofsum_general(L, IndexSet.full(6), IndexSet.full(6))
    with pytest.raises(PreconditionError):
        cofsum_general(mx.eye(3), IndexSet([1]), IndexSet([2]))
    with pytest.raises(PreconditionError):
        cofsum_general(mx.zeros(3, 3), IndexSet([1]), IndexSet([2]))


def test_cofsum_general_detects_wrong_pinv(example1):
    L = laplacian(example1)
    wrong = pinv_shift(L).Ldag.copy()
    wrong[1, 2] += 1
    with pytest.raises(InternalConsistencyError):
        cofsum_general(L, S12, S14, Sdag=wrong)


def test_projection_invariance(example1):
    _, rb = analyze(example1)
    assert all(c.passed for c in cofsum_projection_invariance(rb.R, S12, S14))
    assert all(c.passed for c in cofsum_projection_invariance(mx.all_ones(4), S12, S14))
    assert mx.cofsum(mx.all_ones(4)) == 0
    rng = random.Random(5)
    for _ in range(10):
        A = mx.from_rows([[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5)]
                          for _ in range(5)])
        assert all(c.passed for c in cofsum_projection_invariance(A, S12, IndexSet([3, 5])))


def test_distance_like_of_pinv_is_resistance(example1):
    bundle, rb = analyze(example1)
    assert (distance_like(bundle.Ldag) == rb.R).all()


def test_dmatrix_cofsum_example1(example1):
    bundle, rb = analyze(example1)
    # S = L+ is doubly null of rank n - 1 and its own pseudoinverse is L
    assert dmatrix_cofsum(bundle.Ldag, S12, S12, Sdag=bundle.L) == -2
    assert dmatrix_cofsum(bundle.Ldag, S12, S12) == -(rb.R[0, 1] + rb.R[1, 0])
    assert dmatrix_cofsum(bundle.Ldag, IndexSet([2]), IndexSet([5])) == 1


def test_dmatrix_cofsum_path():
    n = 5
    S = laplacian(embed_undirected(n, [(i, i + 1) for i in range(1, n)]))
    Sdag = pinv_shift(S).Ldag
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pair = IndexSet([i, j])
            classical = mx.det(mx.delete(S, [i, j], [i, j]))
            assert dmatrix_cofsum(Sdag, pair, pair) == -2 * classical == -2 * (j - i)


def test_resistance_cofsum_examples(example1, example4):
    bundle, rb = analyze(example4)
    assert resistance_cofsum(bundle, rb.R, rb.kappa, S12, S14) == -1
    bundle, rb = analyze(example1)
    assert resistance_cofsum(bundle, rb.R, rb.kappa, S12, S12) == -2
    for i in range(1, 7):
        for j in range(1, 7):
            assert resistance_cofsum(bundle, rb.R, rb.kappa, IndexSet([i]), IndexSet([j])) == 1


def test_resistance_cofsum_closed_form_mismatch(example4):
    bundle, rb = analyze(example4)
    assert resistance_cofsum_closed(bundle, 1, S12, S14) == -2
    with pytest.raises(InternalConsistencyError):
        resistance_cofsum(bundle, rb.R, 1, S12, S14)


def test_resistance_cofsum_random():
    rng = random.Random(3)
    for seed in range(25):
        n = 3 + seed % 7
        bundle, rb = analyze(random_balanced(n, n, seed))
        for _ in range(4):
            eta = rng.randint(1, n - 1)
            rows = IndexSet(rng.sample(range(1, n + 1), eta))
            cols = IndexSet(rng.sample(range(1, n + 1), eta))
            resistance_cofsum(bundle, rb.R, rb.kappa, rows, cols)


def test_reciprocal_sums(example1):
    bundle, rb = analyze(example1)
    assert reciprocal_sums(bundle, rb.R, rb.kappa).passed
    bad = reciprocal_sums(bundle, rb.R, 3)
    assert not bad.passed and bad.witness == [1, 2]


def test_float_backend(example4):
    bundle, rb = analyze(example4, "float")
    value = resistance_cofsum(bundle, rb.R, rb.kappa, S12, S14)
    assert isinstance(value, float) and abs(value + 1) < 1e-12
    assert reciprocal_sums(bundle, rb.R, rb.kappa).passed
    assert np.isclose(mx.cofsum(laplacian(example4, "float")), 32)
