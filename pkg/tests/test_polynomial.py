from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fpquiver.linalg import GF, QQ
from fpquiver.polynomial import commuting_tuples, poly_brick_check, poly_ext1, polynomial_fpdim_report


def test_ext_examples():
    assert poly_ext1([1, 2], [1, 2]) == 2
    assert poly_ext1([1, 2], [1, 3]) == 0
    assert poly_ext1([0, 0, 0], [0, 0, 0]) == 3
    assert poly_ext1([5], [7]) == 0
    with pytest.raises(ValueError):
        poly_ext1([1], [1, 2])


def test_brick_check_examples():
    assert poly_brick_check([[[3]], [[Fraction(1, 2)]]]).is_brick
    assert poly_brick_check([[[0, 0], [0, 0]], [[0, 0], [0, 0]]]).commutant_dim == 4
    r = poly_brick_check([[[0, 1], [0, 0]], [[0, 0], [0, 0]]])
    assert r.commutant_dim == 2 and not r.is_brick


def test_brick_check_rejects_non_commuting():
    with pytest.raises(ValueError):
        poly_brick_check([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])
    with pytest.raises(ValueError):
        poly_brick_check([[[0, 1]]])


def test_commuting_pairs_over_f2():
    pairs = list(commuting_tuples(GF(2), 2, 2))
    # two scalars commute with all 16 matrices; each of the 14 others has a centraliser of size 4
    assert len(pairs) == 2 * 16 + 14 * 4
    assert all(poly_brick_check(t, GF(2)).one_dimensional_iff_brick for t in pairs)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_points_report(r):
    rep = polynomial_fpdim_report(r, GF(2))
    assert rep.points == 2 ** r and rep.self_ext == r and rep.best == r


scalars = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), r=st.integers(1, 3))
def test_translation_invariance_and_symmetry(data, r):
    lam = data.draw(st.lists(scalars, min_size=r, max_size=r))
    mu = data.draw(st.one_of(st.just(lam), st.lists(scalars, min_size=r, max_size=r)))
    t = data.draw(st.lists(scalars, min_size=r, max_size=r))
    e = poly_ext1(lam, mu, QQ)
    assert e == poly_ext1([a + b for a, b in zip(lam, t)], [a + b for a, b in zip(mu, t)], QQ)
    assert e == poly_ext1(mu, lam, QQ)
    assert e == (r if lam == mu else 0)


@settings(max_examples=40, deadline=None)
@given(data=st.data(), r=st.integers(1, 3), p=st.sampled_from([2, 3, 7]))
def test_closed_form_over_prime_fields(data, r, p):
    lam = data.draw(st.lists(st.integers(0, p - 1), min_size=r, max_size=r))
    mu = data.draw(st.lists(st.integers(0, p - 1), min_size=r, max_size=r))
    assert poly_ext1(lam, mu, GF(p)) == (r if lam == mu else 0)
