import random
from fractions import Fraction

import pytest

from symlim import linalg


def random_matrix(rng, rows, cols, lo=-4, hi=4):
    return linalg.mat([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def test_rref_identity():
    eye = linalg.identity(3)
    reduced, pivots = linalg.rref(eye)
    assert reduced == eye and pivots == (0, 1, 2)


def test_rank_examples():
    assert linalg.rank(linalg.mat([[1, 2], [2, 4]])) == 1
    assert linalg.rank(linalg.mat([[1, 2], [3, 4]])) == 2
    assert linalg.rank(linalg.zeros(2, 3)) == 0


def test_nullspace_annihilates():
    rng = random.Random(21)
    for _ in range(60):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = random_matrix(rng, rows, cols)
        basis = linalg.nullspace(a)
        assert len(basis) == cols - linalg.rank(a)
        for vec in basis:
            col = linalg.columns_matrix([vec], cols)
            product = linalg.matmul(a, col)
            assert all(x == 0 for row in product for x in row)


def test_left_nullspace_annihilates():
    rng = random.Random(22)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = random_matrix(rng, rows, cols)
        for vec in linalg.left_nullspace(a):
            product = linalg.matmul(linalg.rows_matrix([vec], rows), a)
            assert all(x == 0 for row in product for x in row)


def test_solve_unique():
    a = linalg.mat([[2, 0], [0, 3], [1, 1]])
    x = linalg.mat([[1], [2]])
    b = linalg.matmul(a, x)
    assert linalg.solve(a, b) == x


def test_solve_rejects_inconsistent():
    a = linalg.mat([[1], [1]])
    b = linalg.mat([[1], [2]])
    with pytest.raises(ValueError, match="inconsistent"):
        linalg.solve(a, b)


def test_solve_rejects_underdetermined():
    a = linalg.mat([[1, 1]])
    b = linalg.mat([[1]])
    with pytest.raises(ValueError, match="underdetermined"):
        linalg.solve(a, b)


def test_right_inverse():
    rng = random.Random(23)
    done = 0
    while done < 25:
        rows = rng.randint(1, 3)
        cols = rng.randint(rows, 5)
        a = random_matrix(rng, rows, cols)
        if linalg.rank(a) < rows:
            continue
        assert linalg.matmul(a, linalg.right_inverse(a)) == linalg.identity(rows)
        done += 1


def test_is_invertible():
    assert linalg.is_invertible(linalg.identity(4))
    assert not linalg.is_invertible(linalg.mat([[1, 2], [2, 4]]))
    assert not linalg.is_invertible(linalg.mat([[1, 2, 3], [4, 5, 6]]))


def test_exactness_no_floats():
    a = linalg.mat([[1, 3], [2, 7]])
    reduced, _ = linalg.rref(a)
    assert all(isinstance(x, Fraction) for row in reduced for x in row)
