import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fpquiver.spectral import (
    FactoredPoly, charpoly_radius, compare_roots, cycle_witness_matrix, cyclic_block_violations, isolated_max_value,
    run_max_value, shifted_root, spectral_radius,
)
from fpquiver.suites import random_factored
from oracles import perron_root_numpy


def test_golden_pair():
    r = spectral_radius([[2, 1], [1, 0]])
    assert r.method == "iterative" and abs(r.value - (1 + math.sqrt(2))) < 1e-9


def test_triangular_is_exact():
    r = spectral_radius([[3, 1, 4], [0, 1, 5], [0, 0, 0]])
    assert r == (3.0, "exact")


def test_empty_and_zero():
    assert spectral_radius(np.zeros((0, 0))).value == 0.0
    assert spectral_radius([[0]]).value == 0.0


def test_rejects_bad_input():
    for bad in ([[1, -1], [0, 1]], [[0.5]], [[1, 2]]):
        with pytest.raises(ValueError):
            spectral_radius(bad)


@pytest.mark.parametrize("n", [2, 3, 5, 9, 12])
def test_cyclic_permutation_radius_one(n):
    c = np.roll(np.eye(n, dtype=np.int64), 1, axis=1)
    assert abs(spectral_radius(c).value - 1) < 1e-12 or spectral_radius(c).value == 1.0
    assert cyclic_block_violations(c) == []


def test_block_violations():
    assert cyclic_block_violations([[0, 1], [1, 0]]) == []
    assert cyclic_block_violations([[1, 1], [1, 0]]) == [[0, 1]]
    assert cyclic_block_violations([[2]]) == [[0]]
    assert cyclic_block_violations([[1, 0], [3, 0]]) == []


def test_cycle_witness_charpoly():
    c = cycle_witness_matrix([0, 2, 2])
    target = shifted_root(FactoredPoly.from_roots([0, 2, 2]))
    assert abs(spectral_radius(c).value - target.value) < 1e-9


nonneg = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 5), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(c=nonneg)
def test_bracketing(c):
    a = np.array(c)
    r = spectral_radius(a).value
    eps = 1e-8
    assert a.sum(axis=1).min() - eps <= r <= a.sum(axis=1).max() + eps
    assert r >= a.diagonal().max() - eps
    assert abs(r - perron_root_numpy(a)) < 1e-6


@settings(max_examples=40, deadline=None)
@given(c=nonneg)
def test_iterative_matches_charpoly(c):
    a = np.array(c)
    tol = 1e-9
    lo, hi = charpoly_radius(a, tol)
    r = spectral_radius(a, tol, cross_check=False).value
    assert float(lo) - 2 * tol <= r <= float(hi) + 2 * tol


def test_factored_poly_validation():
    FactoredPoly.from_roots([0, 2, 2])
    with pytest.raises(ValueError):
        FactoredPoly.from_roots([1, 1.5])
    with pytest.raises(ValueError):
        FactoredPoly.from_roots([-1, 2])
    with pytest.raises(ValueError):
        FactoredPoly(((Fraction(1), 0),))
    assert FactoredPoly.parse("0:1,2:2") == FactoredPoly.from_roots([0, 2, 2])
    assert str(FactoredPoly.parse("0:1,2:2")) == "x(x-2)^2-1"


def test_root_of_x_x_minus_2():
    r = shifted_root(FactoredPoly.from_roots([0, 2]))
    assert abs(r.value - (1 + math.sqrt(2))) <= 1e-10
    assert r.hi - r.lo <= Fraction(1, 10 ** 12)
    assert r.poly(r.lo) < 1 <= r.poly(r.hi)


def test_root_is_exact_at_endpoint():
    # (x-1)^2 - 1 vanishes at x = 2
    r = shifted_root(FactoredPoly.from_roots([1, 1]))
    assert r.exact and r.lo == 2


def test_orderings():
    fp = FactoredPoly.from_roots
    assert compare_roots(fp([0, 1, 2]), fp([0, 2])) == -1
    assert compare_roots(fp([0, 2]), fp([0, 2, 2])) == -1
    assert compare_roots(fp([0, 1, 2, 2]), fp([0, 2])) == 1
    assert compare_roots(fp([0, 1, 1, 3, 3]), fp([0, 3])) == -1
    assert compare_roots(fp([2]), fp([2, 2])) == 0


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_lower_factor_decreases_root(seed):
    rng = np.random.default_rng(seed)
    f = random_factored(rng)
    m = int(rng.integers(0, int(f.top)))
    assert compare_roots(f.times(m), f) == -1


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_top_factor_raises_root_iff_several_roots(seed):
    f = random_factored(np.random.default_rng(seed))
    assert compare_roots(f.times(f.top), f) == (0 if f.s == 1 else 1)


def test_closed_forms():
    assert abs(isolated_max_value(4) - (2 + math.sqrt(5))) < 1e-12
    assert abs(isolated_max_value(4) - 4.236067977) < 1e-9
    for n in range(1, 7):
        assert abs(run_max_value(n, 1) - isolated_max_value(n)) < 1e-10
        values = [run_max_value(n, s) for s in range(1, 5)]
        assert all(n <= v < n + 1 for v in values)
        assert values == sorted(set(values))
    with pytest.raises(ValueError):
        isolated_max_value(0)
    with pytest.raises(ValueError):
        run_max_value(1, 0)
