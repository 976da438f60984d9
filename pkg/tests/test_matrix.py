# tests/test_matrix.py
import itertools
from math import gcd

import pytest
from sympy import Matrix

from models.errors import DimensionMismatchError
from models.matrix import IntMatrix, gcd_list, hermite_normal_form, integer_kernel, smith_normal_form


def _random_matrix(rng, max_dim=6, bound=20):
    rows, cols = rng.integers(1, max_dim + 1, size=2)
    return IntMatrix(rng.integers(-bound, bound + 1, size=(rows, cols)))


def _determinantal_divisors(A: IntMatrix):
    """gcd of the k×k minors, for k = 1 .. min(shape)."""
    divisors = []
    for k in range(1, min(A.shape) + 1):
        g = 0
        for rows in itertools.combinations(range(A.rows), k):
            for cols in itertools.combinations(range(A.cols), k):
                g = gcd(g, int(Matrix([[A[i, j] for j in cols] for i in rows]).det()))
        divisors.append(g)
    return divisors


def _det(A: IntMatrix) -> int:
    return int(Matrix(A.tolist()).det())


def _assert_smith(A: IntMatrix):
    result = smith_normal_form(A)
    U, D, V = result.U, result.D, result.V
    assert U @ A @ V == D
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    diagonal = D.diagonal_entries()
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    assert all(d >= 0 for d in diagonal)
    nonzero = [d for d in diagonal if d]
    assert list(diagonal[:len(nonzero)]) == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    return result


def test_gcd_list():
    assert gcd_list([4, 6]) == 2
    assert gcd_list([]) == 0
    assert gcd_list([5]) == 5
    assert gcd_list([-6, 9]) == 3


def test_construction_and_shape():
    A = IntMatrix([[1, 2, 3], [4, 5, 6]])
    assert A.shape == (2, 3)
    assert A.column(1) == (2, 5)
    assert A.row(1) == (4, 5, 6)
    assert A.T.shape == (3, 2)
    assert IntMatrix([], rows=0, cols=3).shape == (0, 3)
    with pytest.raises(DimensionMismatchError):
        IntMatrix([[1, 2], [3]])


def test_matrices_are_immutable():
    A = IntMatrix([[1, 2]])
    row = A[0, :]
    with pytest.raises(ValueError):
        row[0] = 5
    B = A.with_entry(0, 0, 5)
    assert A.row(0) == (1, 2) and B.row(0) == (5, 2)


def test_big_entries_do_not_overflow():
    A = IntMatrix([[2 ** 70, 0], [0, 3 ** 50]])
    assert (A @ A)[0, 0] == 2 ** 140
    assert (A @ A)[1, 1] == 3 ** 100


def test_product_with_empty_inner_dimension_is_zero():
    left = IntMatrix([], rows=2, cols=0)
    right = IntMatrix([], rows=0, cols=3)
    assert left @ right == IntMatrix.zeros(2, 3)
    with pytest.raises(DimensionMismatchError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)


def test_stacking():
    A = IntMatrix([[1, 2]])
    assert IntMatrix.vstack(A, A).shape == (2, 2)
    assert IntMatrix.hstack(A, A).row(0) == (1, 2, 1, 2)
    assert IntMatrix.block_diag(IntMatrix.identity(1), A).tolist() == [[1, 0, 0], [0, 1, 2]]
    with pytest.raises(DimensionMismatchError):
        IntMatrix.hstack(A, IntMatrix.identity(2))


def test_smith_example():
    result = _assert_smith(IntMatrix([[2, 4], [6, 8]]))
    assert result.D == IntMatrix.diagonal([2, 4])
    assert result.invariant_factors == (2, 4)


def test_smith_of_zero_and_identity():
    result = smith_normal_form(IntMatrix.zeros(2, 2))
    assert result.D.is_zero()
    assert result.U.is_identity() and result.V.is_identity()
    assert smith_normal_form(IntMatrix.identity(3)).D.is_identity()


def test_smith_of_empty_matrix():
    result = smith_normal_form(IntMatrix([], rows=0, cols=2))
    assert result.rank == 0
    assert result.V.is_identity()


def test_smith_random_properties(rng):
    for _ in range(200):
        _assert_smith(_random_matrix(rng))


def test_smith_invariant_factors_match_minor_gcds(rng):
    for _ in range(60):
        A = _random_matrix(rng, max_dim=4, bound=12)
        diagonal = smith_normal_form(A).D.diagonal_entries()
        products = [1]
        for d in diagonal:
            products.append(products[-1] * d)
        assert products[1:] == _determinantal_divisors(A)


def _random_unimodular(rng, n, steps=8):
    U = IntMatrix.identity(n)
    if n < 2:
        return U
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        U = IntMatrix.identity(n).with_entry(int(i), int(j), int(rng.integers(-3, 4))) @ U
    swap = [int(k) for k in rng.permutation(n)]
    return IntMatrix([[1 if c == swap[r] else 0 for c in range(n)] for r in range(n)]) @ U


def test_smith_diagonal_is_invariant_under_unimodular_change(rng):
    for _ in range(60):
        A = _random_matrix(rng, max_dim=5, bound=10)
        P = _random_unimodular(rng, A.rows)
        Q = _random_unimodular(rng, A.cols)
        assert abs(_det(P)) == 1 and abs(_det(Q)) == 1
        assert smith_normal_form(P @ A @ Q).D == smith_normal_form(A).D


@pytest.mark.slow
def test_smith_random_sweep(rng):
    for _ in range(1000):
        _assert_smith(_random_matrix(rng))


@pytest.mark.parametrize("entries, expected", [
    ([[2, 0], [0, 1]], [[2, 0], [0, 1]]),
    ([[0, 1], [2, 0]], [[2, 0], [0, 1]]),
    ([[2, 2], [2, -2]], [[2, 2], [0, 4]]),
])
def test_hermite_examples(entries, expected):
    A = IntMatrix(entries)
    H, U = hermite_normal_form(A)
    assert H == IntMatrix(expected)
    assert U @ A == H
    assert abs(_det(U)) == 1


def _assert_hermite(A: IntMatrix):
    H, U = hermite_normal_form(A)
    assert U @ A == H
    assert abs(_det(U)) == 1
    pivots = []
    for row in H.row_vectors():
        if not any(row):
            pivots.append(None)
            continue
        pivots.append(next(j for j, x in enumerate(row) if x))
    # zero rows at the bottom, pivots strictly to the right
    seen_zero = False
    last = -1
    for i, j in enumerate(pivots):
        if j is None:
            seen_zero = True
            continue
        assert not seen_zero
        assert j > last
        last = j
        assert H[i, j] > 0
        assert all(0 <= H[k, j] < H[i, j] for k in range(i))
    assert hermite_normal_form(H)[0] == H


def test_hermite_random_properties(rng):
    for _ in range(200):
        _assert_hermite(_random_matrix(rng))


@pytest.mark.slow
def test_hermite_random_sweep(rng):
    for _ in range(1000):
        _assert_hermite(_random_matrix(rng))


def test_integer_kernel(rng):
    for _ in range(100):
        A = _random_matrix(rng, max_dim=5, bound=6)
        K = integer_kernel(A)
        assert K.rows == A.cols
        assert K.cols == A.cols - smith_normal_form(A).rank
        assert (A @ K).is_zero()


def test_integer_kernel_of_full_rank_matrix_is_empty():
    assert integer_kernel(IntMatrix.identity(3)).shape == (3, 0)
