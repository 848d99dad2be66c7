"""Representations of the polynomial algebra k[x_1, ..., x_r]: r commuting matrices on one space."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .linalg import QQ, Field, all_matrices, rank
from .spectral import spectral_radius


def poly_ext1(lam: Sequence, mu: Sequence, field: Field = QQ) -> int:
    """``dim Ext^1((k, lam), (k, mu))`` for one-dimensional representations.

    An extension is ``E_i = [[mu_i, a_i], [0, lam_i]]``.  The ``E_i`` commute
    iff ``a_j (mu_i - lam_i) = a_i (mu_j - lam_j)``; conjugating by
    ``[[1, c], [0, 1]]`` moves ``a`` along ``lam - mu``.
    """
    if len(lam) != len(mu):
        raise ValueError("lambda and mu must have the same length")
    r = len(lam)
    if r < 1:
        raise ValueError("need at least one variable")
    lam = [field.scalar(x) for x in lam]
    mu = [field.scalar(x) for x in mu]
    diff = [field.scalar(m - l) for l, m in zip(lam, mu)]
    rows = []
    for i in range(r):
        for j in range(i + 1, r):
            row = [field.scalar(0)] * r
            row[j] = field.scalar(row[j] + diff[i])
            row[i] = field.scalar(row[i] - diff[j])
            rows.append(row)
    cocycles = r - (rank(field, field.array(np.array(rows, dtype=object))) if rows else 0)
    boundary = field.array(np.array([[field.scalar(-d) for d in diff]], dtype=object))
    return cocycles - rank(field, boundary)


@dataclass(frozen=True)
class CommutantResult:
    dim_space: int
    commutant_dim: int

    @property
    def is_brick(self) -> bool:
        return self.commutant_dim == 1

    @property
    def one_dimensional_iff_brick(self) -> bool:
        return self.is_brick == (self.dim_space == 1)


def poly_brick_check(matrices: Sequence, field: Field = QQ) -> CommutantResult:
    """Dimension of the joint commutant ``{D : D C_i = C_i D}`` of commuting square matrices."""
    mats = [field.array(np.asarray(m, dtype=object)) for m in matrices]
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise ValueError("matrices must be square of one size")
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            if np.any(field.reduce(field.matmul(a, b) - field.matmul(b, a)) != 0):
                raise ValueError("matrices do not commute")
    if n == 0:
        return CommutantResult(0, 0)
    eye = field.eye(n)
    blocks = [field.reduce(np.kron(eye, c.T) - np.kron(c, eye)) for c in mats]
    system = np.vstack(blocks)
    return CommutantResult(n, n * n - rank(field, system))


def commuting_tuples(field: Field, n: int, r: int):
    """Every ``r``-tuple of pairwise commuting ``n x n`` matrices over a finite field."""
    mats = list(all_matrices(field, n, n))
    for combo in product(range(len(mats)), repeat=r):
        tup = [mats[k] for k in combo]
        if all(not np.any(field.reduce(field.matmul(a, b) - field.matmul(b, a)) != 0)
               for i, a in enumerate(tup) for b in tup[i + 1:]):
            yield tup


@dataclass(frozen=True)
class PolyReport:
    r: int
    points: int
    self_ext: int
    best: float
    method: str


def polynomial_fpdim_report(r: int, field: Field) -> PolyReport:
    """Brick set of all one-dimensional representations over a finite field.

    Distinct points have no morphisms between them and no extensions, and
    each has ``r`` self-extensions, so the adjacency matrix is ``r * I``.
    """
    if field.size is None:
        raise ValueError("the point enumeration needs a finite field")
    points = list(product(range(field.size), repeat=r))
    adj = np.array([[poly_ext1(p, q, field) for q in points] for p in points], dtype=np.int64)
    rad = spectral_radius(adj)
    return PolyReport(r, len(points), int(adj[0, 0]), rad.value, rad.method)
