from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fpquiver.linalg import (
    GF, QQ, FieldMismatchError, batch_rank, check_same_field, complement_basis, from_strings, is_invertible,
    kernel_basis, parse_field, rank, rref, solve, to_strings,
)


def test_rank_identity():
    assert rank(GF(7), GF(7).eye(3)) == 3
    assert rank(QQ, QQ.eye(3)) == 3


def test_kernel_over_f5():
    f = GF(5)
    k = kernel_basis(f, f.array([[1, 1]]))
    assert k.shape == (2, 1)
    assert not np.any(f.reduce(f.array([[1, 1]]) @ k))
    scale = f.inv(k[0, 0])
    assert [(int(x) * scale) % 5 for x in k[:, 0]] == [1, 4]


def test_solve_rational():
    x = solve(QQ, QQ.array([[2]]), QQ.array([[1]]))
    assert x[0, 0] == Fraction(1, 2)


def test_solve_inconsistent():
    f = GF(3)
    assert solve(f, f.array([[1, 1], [1, 1]]), f.array([[0], [1]])) is None


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        check_same_field(GF(2), GF(3))


def test_parse_field():
    assert parse_field("Q") is QQ
    assert parse_field("GF(5)") == GF(5)
    assert parse_field("p 7") == GF(7)
    assert parse_field("2") == GF(2)
    with pytest.raises(ValueError):
        parse_field("4")


def test_string_round_trip():
    a = QQ.array([[Fraction(1, 3), -2], [0, Fraction(7, 5)]])
    assert np.array_equal(from_strings(QQ, to_strings(QQ, a), (2, 2)), a)


def test_complement_basis_spans():
    f = GF(2)
    sub = f.array([[1], [1], [0]])
    comp = complement_basis(f, sub, 3)
    assert comp.shape[1] == 2
    assert is_invertible(f, np.hstack([sub, comp]))


def matrices(field_st):
    return st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(rows=matrices(None), p=st.sampled_from([2, 3, 5, 101, 0]))
def test_rank_nullity(rows, p):
    f = QQ if p == 0 else GF(p)
    a = f.array(np.array(rows, dtype=object))
    assert rank(f, a) + kernel_basis(f, a).shape[1] == a.shape[1]


@settings(max_examples=60, deadline=None)
@given(rows=matrices(None), p=st.sampled_from([2, 3, 0]))
def test_rref_idempotent(rows, p):
    f = QQ if p == 0 else GF(p)
    a = f.array(np.array(rows, dtype=object))
    r, piv = rref(f, a)
    r2, piv2 = rref(f, r)
    assert np.array_equal(r, r2) and piv == piv2


@settings(max_examples=40, deadline=None)
@given(p=st.sampled_from([2, 3, 5]), seed=st.integers(0, 10 ** 6))
def test_batch_rank_matches_rank(p, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, (6, 3, 4))
    f = GF(p)
    assert batch_rank(p, a).tolist() == [rank(f, f.array(m)) for m in a]
