from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hhlie.linalg import Echelon, Field, ModP, is_prime, nullspace, rank, rref_rows

PRIMES = [2, 3, 5, 7, 101]


def test_prime_fields():
    F = Field(7)
    a = F(3)
    assert a * a.inverse() == F.one
    assert a + (-a) == F.zero
    assert F("1/2") * 2 == F.one
    assert F(-1) == F(6)
    assert Field(7) is F
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()
    with pytest.raises(ZeroDivisionError):
        Field(3)(Fraction(1, 3))


def test_rationals_are_exact():
    Q = Field(0)
    assert Q("1/3") + Q("2/3") == Q.one
    assert isinstance(Q(2), Fraction)
    assert Q.name == "Q" and Field(5).name == "GF(5)"


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_signed_printing():
    assert str(ModP(4, 5)) == "-1"
    assert str(ModP(2, 5)) == "2"


def _rank_fraction(mat, p):
    """Rank by plain Fraction Gaussian elimination, reducing mod p at the end."""
    m = [[Fraction(x) for x in r] for r in mat]
    F = Field(p)
    e = Echelon(F)
    for r in m:
        e.add({j: F(x) for j, x in enumerate(r) if F(x)})
    return len(e)


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                       min_size=1, max_size=7))


@given(matrices, st.sampled_from(PRIMES))
def test_dense_and_sparse_ranks_agree(mat, p):
    F = Field(p)
    rows = [{j: F(v) for j, v in enumerate(r) if F(v)} for r in mat]
    ncols = len(mat[0])
    assert rank(rows, ncols, F) == _rank_fraction(mat, p)


@given(matrices)
def test_rational_rank_matches_numpy(mat):
    Q = Field(0)
    rows = [{j: Q(v) for j, v in enumerate(r) if v} for r in mat]
    assert rank(rows, len(mat[0]), Q) == np.linalg.matrix_rank(np.array(mat, dtype=float))


@given(matrices, st.sampled_from([0] + PRIMES))
def test_nullspace_is_kernel(mat, p):
    F = Field(p)
    rows = [{j: F(v) for j, v in enumerate(r) if F(v)} for r in mat]
    n = len(mat[0])
    null = nullspace(rows, n, F)
    assert len(null) == n - rank(rows, n, F)
    for v in null:
        for r in rows:
            assert sum((c * v.get(j, F.zero) for j, c in r.items()), F.zero) == F.zero


@given(matrices, st.sampled_from([0, 3, 5]))
def test_echelon_coordinates_reconstruct(mat, p):
    F = Field(p)
    rows = [{j: F(v) for j, v in enumerate(r) if F(v)} for r in mat]
    e = Echelon.of(F, rows, len(mat[0]))
    for r in rows:
        assert e.reduce(r) == {}
        co = e.coordinates(r)
        back: dict = {}
        for c, a in co.items():
            for j, x in e.rows[c].items():
                back[j] = back.get(j, F.zero) + a * x
        assert {j: x for j, x in back.items() if x} == r


def test_rref_rows_is_reduced():
    F = Field(5)
    rows = [{0: F(2), 1: F(4)}, {0: F(1), 2: F(3)}, {1: F(1), 2: F(1)}]
    red = rref_rows(rows, 3, F)
    for c, row in red.items():
        assert row[c] == F.one
        for c2, row2 in red.items():
            if c2 != c:
                assert not row2.get(c)
