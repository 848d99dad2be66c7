"""Spectral radii of nonnegative integer matrices and the ``f(x) - 1`` root formulas.

Floating point is confined to this module.  Radii of irreducible blocks come
from power iteration bracketed by Collatz-Wielandt bounds; small matrices are
cross-checked against Sturm-sequence bisection on the exact characteristic
polynomial.  Roots of ``f(x) - 1`` are isolated with exact rational
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
import sympy
from scipy.sparse.csgraph import connected_components

CHARPOLY_CHECK_MAX = 8


class Radius(NamedTuple):
    value: float
    method: str  # "exact" or "iterative"


def as_nonneg_matrix(c) -> np.ndarray:
    arr = np.asarray(c)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {arr.shape}")
    if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
        raise ValueError("adjacency matrix must have integer entries")
    arr = arr.astype(np.int64)
    if np.any(arr < 0):
        raise ValueError("adjacency matrix has a negative entry")
    return arr


def strong_components(c: np.ndarray) -> list[list[int]]:
    n = c.shape[0]
    if n == 0:
        return []
    _, labels = connected_components(c != 0, directed=True, connection="strong")
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(i)
    return sorted(groups.values())


def _irreducible_radius(block: np.ndarray, tol: float, max_iter: int) -> float:
    # B + I is primitive, so the Collatz-Wielandt bracket closes around rho + 1.
    b = block.astype(float) + np.eye(block.shape[0])
    x = np.ones(block.shape[0])
    lo, hi = 0.0, math.inf
    for _ in range(max_iter):
        y = b @ x
        ratios = y / x
        lo, hi = max(lo, ratios.min()), min(hi, ratios.max())
        if hi - lo <= tol:
            break
        x = y / y.max()
    else:
        raise RuntimeError(f"power iteration did not reach tolerance {tol}")
    return (lo + hi) / 2 - 1


def spectral_radius(c, tol: float = 1e-9, max_iter: int = 1_000_000, cross_check: bool = True) -> Radius:
    """``rho(C)`` for a nonnegative integer matrix, tagged ``exact`` or ``iterative``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = as_nonneg_matrix(c)
    if c.shape[0] == 0:
        return Radius(0.0, "exact")
    best, exact = 0.0, True
    for comp in strong_components(c):
        if len(comp) == 1:
            best = max(best, float(c[comp[0], comp[0]]))
        else:
            exact = False
            best = max(best, _irreducible_radius(c[np.ix_(comp, comp)], tol, max_iter))
    if exact:
        return Radius(float(best), "exact")
    if cross_check and c.shape[0] <= CHARPOLY_CHECK_MAX:
        lo, hi = charpoly_radius(c, tol)
        if not (float(lo) - 2 * tol <= best <= float(hi) + 2 * tol):
            raise ArithmeticError(f"power iteration {best} disagrees with characteristic polynomial [{lo}, {hi}]")
    return Radius(float(best), "iterative")


def charpoly(c) -> sympy.Poly:
    c = as_nonneg_matrix(c)
    x = sympy.Symbol("x")
    return sympy.Matrix(c.tolist()).charpoly(x)


def charpoly_radius(c, tol: float = 1e-12) -> tuple[Fraction, Fraction]:
    """Bracket ``[lo, hi]`` of width ``<= tol`` around the largest real root of the characteristic polynomial.

    For a nonnegative matrix this root is the spectral radius.  Root counts
    come from Sturm sequences, so the bracket is exact.
    """
    c = as_nonneg_matrix(c)
    poly = charpoly(c)
    lo, hi = Fraction(0), Fraction(int(c.sum(axis=1).max()) + 1)
    while hi - lo > Fraction(tol):
        mid = (lo + hi) / 2
        if poly.count_roots(sympy.Rational(mid.numerator, mid.denominator),
                            sympy.Rational(hi.numerator, hi.denominator)) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def cycle_witness_matrix(diagonal: Sequence[int]) -> np.ndarray:
    """Cyclic adjacency matrix with the given diagonal: ``det(xI - C) = prod(x - d_i) - 1``."""
    n = len(diagonal)
    c = np.diag(np.asarray(diagonal, dtype=np.int64))
    for i in range(n):
        c[i, (i + 1) % n] += 1
    return c


@dataclass(frozen=True)
class FactoredPoly:
    """``f(x) = prod (x - n_i)^{r_i}`` with ``0 <= n_1 < ... < n_{s-1} <= n_s - 1``."""

    factors: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("need at least one factor")
        fs = tuple((Fraction(n), int(r)) for n, r in self.factors)
        roots = [n for n, _ in fs]
        if any(r < 1 for _, r in fs):
            raise ValueError("multiplicities must be positive")
        if roots[0] < 0:
            raise ValueError("roots must be nonnegative")
        if any(a >= b for a, b in zip(roots, roots[1:])):
            raise ValueError("roots must be strictly increasing")
        if len(roots) > 1 and roots[-2] > roots[-1] - 1:
            raise ValueError("the two largest roots must be at least 1 apart")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def from_roots(cls, roots: Sequence) -> "FactoredPoly":
        """Build from a root list with repetition, e.g. ``[0, 2, 2]`` for ``x (x-2)^2``."""
        counts: dict[Fraction, int] = {}
        for r in roots:
            counts[Fraction(r)] = counts.get(Fraction(r), 0) + 1
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def parse(cls, text: str) -> "FactoredPoly":
        """Parse ``"0:1,2:2"`` (root:multiplicity pairs)."""
        out = []
        for part in text.split(","):
            root, _, mult = part.strip().partition(":")
            out.append((Fraction(root), int(mult or 1)))
        return cls(tuple(sorted(out)))

    @property
    def top(self) -> Fraction:
        return self.factors[-1][0]

    @property
    def s(self) -> int:
        return len(self.factors)

    def times(self, root) -> "FactoredPoly":
        """``(x - root) f(x)``."""
        return FactoredPoly.from_roots(list(self.roots()) + [Fraction(root)])

    def roots(self) -> tuple[Fraction, ...]:
        return tuple(n for n, r in self.factors for _ in range(r))

    def __call__(self, x: Fraction) -> Fraction:
        out = Fraction(1)
        for n, r in self.factors:
            out *= (x - n) ** r
        return out

    def shifted_sympy(self) -> sympy.Poly:
        x = sympy.Symbol("x")
        expr = sympy.Integer(1)
        for n, r in self.factors:
            expr *= (x - sympy.Rational(n.numerator, n.denominator)) ** r
        return sympy.Poly(expr - 1, x)

    def __str__(self) -> str:
        parts = []
        for n, r in self.factors:
            base = "x" if n == 0 else f"(x-{n})"
            parts.append(base if r == 1 else f"{base}^{r}")
        return "".join(parts) + "-1"


@dataclass(frozen=True)
class RootInterval:
    """``lo < x0 <= hi`` for the root of ``f(x) - 1`` in ``(n_s, n_s + 1]``."""

    poly: FactoredPoly
    lo: Fraction
    hi: Fraction

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def refine(self, width: Fraction) -> "RootInterval":
        lo, hi = self.lo, self.hi
        while hi - lo > width:
            mid = (lo + hi) / 2
            if self.poly(mid) - 1 >= 0:
                hi = mid
            else:
                lo = mid
        if self.poly(hi) - 1 == 0:
            lo = hi
        return RootInterval(self.poly, lo, hi)


def shifted_root(f: FactoredPoly, width: float = 1e-12) -> RootInterval:
    """Isolate the unique root of ``f(x) - 1`` in ``(n_s, n_s + 1]``, which equals ``rho(f(x) - 1)``."""
    lo, hi = f.top, f.top + 1
    if f(hi) - 1 == 0:
        return RootInterval(f, hi, hi)
    return RootInterval(f, lo, hi).refine(Fraction(width))


def compare_roots(f: FactoredPoly, g: FactoredPoly) -> int:
    """Exact sign of ``rho(f - 1) - rho(g - 1)``: ``-1``, ``0`` or ``1``."""
    a, b = shifted_root(f, 1e-6), shifted_root(g, 1e-6)
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo <= hi:
        common = sympy.gcd(f.shifted_sympy(), g.shifted_sympy())
        if common.degree() > 0:
            q_lo = sympy.Rational(lo.numerator, lo.denominator)
            q_hi = sympy.Rational(hi.numerator, hi.denominator)
            if sympy.Poly(common, sympy.Symbol("x")).count_roots(q_lo, q_hi) > 0:
                return 0
    width = Fraction(1, 10 ** 6)
    while not (a.hi < b.lo or b.hi < a.lo):
        width /= 2 ** 20
        a, b = a.refine(width), b.refine(width)
    return 1 if a.lo > b.hi else -1


def isolated_max_value(n_max: int) -> float:
    """``(n + sqrt(n^2 + 4)) / 2``: the radius of ``[[0, 1], [1, n]]``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return (n_max + math.sqrt(n_max * n_max + 4)) / 2


def run_max_value(n_max: int, s: int) -> float:
    """``rho(x (x - n)^s - 1)``: the radius of the cycle with diagonal ``(0, n, ..., n)``."""
    if n_max < 1 or s < 1:
        raise ValueError("n_max and s must be at least 1")
    return shifted_root(FactoredPoly(((Fraction(0), 1), (Fraction(n_max), s)))).value


def is_cycle_permutation(block: np.ndarray) -> bool:
    """Whether ``block`` is the matrix of one cyclic permutation of all its indices, zero diagonal."""
    n = block.shape[0]
    if n < 2 or np.any(np.diag(block)) or np.any((block != 0) & (block != 1)):
        return False
    if np.any(block.sum(axis=0) != 1) or np.any(block.sum(axis=1) != 1):
        return False
    seen, i = set(), 0
    while i not in seen:
        seen.add(i)
        i = int(np.argmax(block[i]))
    return len(seen) == n


def cyclic_block_violations(c) -> list[list[int]]:
    """Strong components of ``c`` that are neither a single cycle nor a 1x1 block in ``{0, 1}``."""
    c = as_nonneg_matrix(c)
    bad = []
    for comp in strong_components(c):
        block = c[np.ix_(comp, comp)]
        if len(comp) == 1:
            if block[0, 0] > 1:
                bad.append(comp)
        elif not is_cycle_permutation(block):
            bad.append(comp)
    return bad
