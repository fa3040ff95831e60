import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariants

from burnc.lattice import (
    IntMatrix,
    check_snf,
    hnf,
    integer_determinant,
    invariant_factors,
    membership,
    quotient_structure,
    snf,
)
from reference_oracle import in_lattice, smith_invariants


def _matrix(draw_rows):
    return IntMatrix.from_dense(draw_rows, len(draw_rows[0]))


matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-10, 10), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_dense_roundtrip():
    A = IntMatrix.from_dense([[1, 0, 2], [0, 0, 0]], 3)
    assert A.to_dense() == [[1, 0, 2], [0, 0, 0]]
    assert A.nnz == 2
    assert A.transpose().shape == (3, 2)


def test_matmul_and_identity():
    A = IntMatrix.from_dense([[1, 2], [3, 4]], 2)
    assert A @ IntMatrix.identity(2) == A
    assert (A @ A).to_dense() == [[7, 10], [15, 22]]


def test_determinant():
    assert integer_determinant(IntMatrix.from_dense([[2, 1], [1, 1]], 2)) == 1
    assert integer_determinant(IntMatrix.from_dense([[4, 6], [6, 9]], 2)) == 0
    assert integer_determinant(IntMatrix.from_dense([[0, 1, 0], [1, 0, 0], [0, 0, 3]], 3)) == -3


@pytest.mark.parametrize("rows,expected", [
    ([[2, 4], [4, 8]], (2,)),
    ([[2, 0], [0, 3]], (1, 6)),
    ([[0, 0], [0, 0]], ()),
    ([[6, 4, 2]], (2,)),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
    ([[2, 4], [6, 8]], (2, 4)),
    ([[6, 0], [0, 10]], (2, 30)),
])
def test_known_invariants(rows, expected):
    assert invariant_factors(IntMatrix.from_dense(rows, len(rows[0]))) == expected


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_sympy_and_textbook(rows):
    A = _matrix(rows)
    res = snf(A)
    check_snf(A, res)
    ref = sorted(abs(int(d)) for d in sympy_invariants(Matrix(rows), domain=ZZ) if d != 0)
    assert list(res.invariants) == ref
    assert list(res.invariants) == smith_invariants(rows, len(rows[0]))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hnf_is_row_equivalent(rows):
    A = _matrix(rows)
    H, U = hnf(A)
    assert U @ A == H
    assert abs(integer_determinant(U)) == 1
    # rows of A lie in the lattice of H and conversely
    for r in rows:
        assert membership(r, H)
    for r in H.to_dense():
        assert membership(r, A)


def test_hnf_examples():
    I3 = IntMatrix.identity(3)
    assert hnf(I3)[0] == I3
    D = IntMatrix.from_dense([[2, 0], [0, 3]], 2)
    assert hnf(D)[0] == D
    assert hnf(IntMatrix.from_dense([[2, 4], [6, 8]], 2))[0].to_dense() == [[2, 0], [0, 4]]


def test_membership_small_cases():
    R = IntMatrix.from_dense([[2, 0], [0, 3]], 2)
    assert membership([4, 9], R)
    assert not membership([1, 0], R)
    assert membership([0, 0], IntMatrix(0, 2))
    assert not membership([0, 1], IntMatrix(0, 2))


def test_membership_against_textbook_random():
    rng = random.Random(3)
    for _ in range(200):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        v = [rng.randint(-6, 6) for _ in range(n)]
        assert membership(v, IntMatrix.from_dense(rows, n)) == in_lattice(rows, v, n)


def test_quotient_structure_and_coordinates():
    R = IntMatrix.from_dense([[2, 0, 0], [0, 4, 0]], 3)
    q = quotient_structure(3, R)
    assert q.free_rank == 1 and q.torsion == (2, 4)
    assert q.describe() == "Z (+) Z/2 (+) Z/4"
    assert q.membership([2, 8, 0])
    assert not q.membership([1, 0, 0])
    free, tors = q.coordinates([0, 0, 5])
    assert free in ((5,), (-5,)) and tors == (0, 0)
    assert q.coordinates([2, 4, 0]) == ((0,), (0, 0))


def test_quotient_describe_trivial():
    q = quotient_structure(1, IntMatrix.from_dense([[1]], 1))
    assert q.describe() == "0"
    assert quotient_structure(3, IntMatrix(0, 3)).describe() == "Z^3"


def test_quotient_wrong_shape():
    with pytest.raises(ValueError):
        quotient_structure(2, IntMatrix.from_dense([[1, 2, 3]], 3))


def test_reduce_is_canonical():
    R = IntMatrix.from_dense([[1, 1, 0], [0, 2, 2]], 3)
    q = quotient_structure(3, R)
    a = q.reduce([3, 1, 0])
    b = q.reduce([3 + 1, 1 + 1, 0])
    assert a == b
