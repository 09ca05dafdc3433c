from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from optangent.exactnum import (GF, QQ, Matrix, MixedRings, RowSpace, Zp, kernel_basis,
                                parse_ring, rank_of_vectors, rref)

fracs = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
primes = st.sampled_from([2, 3, 5, 7, 11])


def test_rref_frozen():
    m = Matrix.from_rows([[2, 4, 6], [1, 1, 1], [3, 5, 7]])
    r, piv = rref(m)
    assert piv == [0, 1]
    assert r.to_rows() == [[1, 0, -1], [0, 1, 2], [0, 0, 0]]


def test_kernel_frozen():
    m = Matrix.from_rows([[1, 1, 1]])
    assert kernel_basis(m) == [(-1, 1, 0), (-1, 0, 1)]


def test_zp_arithmetic():
    F = GF(5)
    a, b = F(3), F(4)
    assert a + b == 2 and a * b == 2 and a / b == 2
    assert F(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        a / F(0)


def test_mixed_rings_rejected():
    with pytest.raises(MixedRings):
        Zp(1, 5) + Zp(1, 7)
    with pytest.raises(MixedRings):
        QQ(Zp(1, 5))
    with pytest.raises(MixedRings):
        Matrix.from_rows([[Zp(1, 5)]], ring=GF(7))


def test_nonprime_rejected():
    with pytest.raises(ValueError):
        GF(6)


def test_parse_ring():
    assert parse_ring("Q") == QQ and parse_ring("Z/5") == GF(5) and parse_ring("GF7") == GF(7)
    with pytest.raises(ValueError):
        parse_ring("R")


def test_rowspace_membership():
    s = RowSpace()
    assert s.add({"a": 1, "b": 2})
    assert s.add({"b": 1})
    assert not s.add({"a": 3})
    assert s.contains({"a": 1, "b": -5}) and len(s) == 2


@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_nullity(rows):
    m = Matrix.from_rows(rows, ring=QQ)
    ker = kernel_basis(m)
    assert m.rank() + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m @ v)


@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_idempotent(rows):
    r, piv = rref(Matrix.from_rows(rows, ring=QQ))
    r2, piv2 = rref(r)
    assert r2 == r and piv2 == piv


@given(primes, st.integers(-100, 100), st.integers(-100, 100))
def test_zp_field_laws(p, x, y):
    F = GF(p)
    a, b = F(x), F(y)
    assert (a + b) * a == a * a + b * a
    if b:
        assert (a / b) * b == a


@given(primes, st.lists(st.lists(st.integers(0, 20), min_size=3, max_size=3), min_size=1,
                        max_size=4))
def test_rank_bounded_mod_p(p, rows):
    F = GF(p)
    r = rank_of_vectors(F, rows, 3)
    assert r <= min(len(rows), 3)
    assert r <= rank_of_vectors(QQ, rows, 3)
