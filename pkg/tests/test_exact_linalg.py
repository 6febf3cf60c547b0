import random
from fractions import Fraction

import pytest

from tiltbraid.exact_linalg import (
    LinAlgError,
    Matrix,
    PrimeField,
    QQ,
    inverse,
    nullspace,
    rank,
    rref,
    solve,
)


def mat(rows):
    return Matrix(QQ, [[Fraction(x) for x in r] for r in rows])


def col(entries):
    return Matrix.column(QQ, [Fraction(x) for x in entries])


def test_nullspace_zero_map():
    basis = nullspace(mat([[0]]))
    assert len(basis) == 1
    assert basis[0].rows == [[Fraction(1)]]


def test_nullspace_identity():
    assert nullspace(Matrix.identity(QQ, 3)) == []


def test_nullspace_rank_one():
    # rows are proportional, kernel is spanned by (2, -1) up to scale
    basis = nullspace(mat([[1, 2], [2, 4]]))
    assert len(basis) == 1
    v = [basis[0].rows[0][0], basis[0].rows[1][0]]
    assert v[0] * Fraction(-1) == v[1] * Fraction(2)


def test_solve_identity():
    b = col([3, -5, 7])
    x = solve(Matrix.identity(QQ, 3), b)
    assert x == b


def test_solve_underdetermined_any_witness():
    a = mat([[1, 1]])
    x = solve(a, col([2]))
    assert x is not None
    assert (a * x) == col([2])


def test_solve_inconsistent():
    assert solve(mat([[1], [1]]), col([1, 2])) is None


def test_solve_dimension_mismatch():
    with pytest.raises(LinAlgError):
        solve(mat([[1, 2]]), col([1, 2]))


def test_rank_nullity_random():
    rng = random.Random(1234)
    for _ in range(40):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = mat([[rng.randint(-4, 4) for _ in range(m)] for _ in range(n)])
        assert rank(a) + len(nullspace(a)) == m
        for v in nullspace(a):
            assert (a * v).is_zero()


def test_solve_reproduces_exactly():
    rng = random.Random(99)
    for _ in range(30):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = mat([[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
        x0 = col([rng.randint(-9, 9) for _ in range(m)])
        b = a * x0
        x = solve(a, b)
        assert x is not None
        assert a * x == b  # exact, no tolerance


def test_inverse_round_trip():
    a = mat([[2, 1], [1, 1]])
    ai = inverse(a)
    assert a * ai == Matrix.identity(QQ, 2)
    assert inverse(mat([[1, 2], [2, 4]])) is None


def test_rref_pivots():
    r, pivots = rref(mat([[0, 1], [1, 0]]))
    assert pivots == [0, 1]
    assert r == Matrix.identity(QQ, 2)


def test_empty_shapes_are_legal():
    e = Matrix(QQ, [], ncols=3)
    assert e.nrows == 0 and e.ncols == 3
    assert rank(e) == 0
    assert len(nullspace(e)) == 3


def test_prime_field_arithmetic():
    gf = PrimeField(46337)
    a = gf.of_int(12345)
    b = gf.of_fraction(Fraction(1, 2))
    assert (b + b) == gf.one
    assert a / a == gf.one
    assert gf.parse("-3/4") * gf.of_int(-4) == gf.of_int(3)


def test_prime_field_floor():
    with pytest.raises(ValueError):
        PrimeField(46337 - 2)
    with pytest.raises(ValueError):
        PrimeField(46340)  # composite above the floor


def test_prime_field_linalg_matches_rational_rank():
    gf = PrimeField(46337)
    rng = random.Random(5)
    for _ in range(20):
        rows = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(3)]
        mq = mat(rows)
        mp = Matrix(gf, [[gf.of_int(x) for x in r] for r in rows])
        assert rank(mq) == rank(mp)
