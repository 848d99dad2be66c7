"""Exact dense linear algebra over prime fields and the rationals.

Matrices are plain 2-d numpy arrays interpreted over a :class:`Field`.
Prime-field matrices use ``int64`` entries reduced into ``[0, p)``;
rational matrices use ``object`` arrays of :class:`fractions.Fraction`.
Nothing in this module ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np


class FieldMismatchError(ValueError):
    """Raised when two objects defined over different fields are combined."""


class Field:
    """Scalar field used by every exact computation."""

    dtype: object = object
    size: Optional[int] = None  # None for infinite fields

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def scalar(self, value):
        raise NotImplementedError

    def inv(self, value):
        raise NotImplementedError

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return self.array(np.zeros((rows, cols), dtype=np.int64))

    def eye(self, n: int) -> np.ndarray:
        return self.array(np.eye(n, dtype=np.int64))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
        return self.reduce(a @ b)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.kron(a, b))

    def elements(self) -> Iterator:
        raise TypeError(f"{self} is infinite")

    def encode(self, value) -> str:
        return str(value)

    def decode(self, text: str):
        return self.scalar(Fraction(text))


@dataclass(frozen=True)
class GF(Field):
    """The prime field with ``p`` elements."""

    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"field characteristic must be prime, got {self.p}")

    @property
    def size(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def dtype(self):  # type: ignore[override]
        return np.int64

    def __str__(self) -> str:
        return f"GF({self.p})"

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data)
        if arr.dtype == object:
            arr = np.vectorize(lambda x: self.scalar(x), otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
        return np.mod(arr.astype(np.int64), self.p)

    def scalar(self, value) -> int:
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return int(value) % self.p

    def inv(self, value) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(value, -1, self.p)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return np.mod(a, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))


@dataclass(frozen=True)
class Rationals(Field):
    """The field of rational numbers with exact ``Fraction`` entries."""

    def __str__(self) -> str:
        return "Q"

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = Fraction(x)
        return out

    def scalar(self, value) -> Fraction:
        return Fraction(value)

    def inv(self, value) -> Fraction:
        value = Fraction(value)
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / value

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
        if 0 in a.shape or 0 in b.shape:
            return self.zeros(a.shape[0], b.shape[1])
        return a @ b

    def encode(self, value) -> str:
        return str(Fraction(value))


QQ = Rationals()


def parse_field(text: str) -> Field:
    """Parse ``"Q"``, ``"2"``, ``"GF(5)"`` or ``"p 5"`` style field names."""
    t = text.strip().upper().replace(" ", "")
    if t in ("Q", "QQ"):
        return QQ
    for prefix in ("GF(", "F"):
        if t.startswith(prefix):
            t = t[len(prefix):].rstrip(")")
    if t.startswith("P"):
        t = t[1:]
    return GF(int(t))


def check_same_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatchError(f"field mismatch: {first} vs {f}")
    return first


def rref(field: Field, a: np.ndarray, pivot_cols: Optional[int] = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot column list.

    Only the first ``pivot_cols`` columns are eligible as pivots; row
    operations still act on the full width (useful for augmented systems).
    """
    r_mat = field.array(a).copy()
    rows, cols = r_mat.shape
    if pivot_cols is None:
        pivot_cols = cols
    pivots: list[int] = []
    r = 0
    for c in range(pivot_cols):
        if r == rows:
            break
        nz = np.nonzero(r_mat[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            r_mat[[r, k]] = r_mat[[k, r]]
        piv = r_mat[r, c]
        if piv != 1:
            r_mat[r] = field.reduce(r_mat[r] * field.inv(piv))
        others = np.nonzero(r_mat[:, c] != 0)[0]
        others = others[others != r]
        if others.size:
            r_mat[others] = field.reduce(r_mat[others] - np.outer(r_mat[others, c], r_mat[r]))
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank(field: Field, a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(field, a)[1])


def kernel_basis(field: Field, a: np.ndarray) -> np.ndarray:
    """Columns spanning the right null space of ``a`` (shape ``cols x nullity``)."""
    a = np.asarray(a)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return field.eye(cols)
    r_mat, pivots = rref(field, a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field.zeros(cols, len(free))
    for j, fc in enumerate(free):
        basis[fc, j] = field.scalar(1)
        for i, pc in enumerate(pivots):
            basis[pc, j] = field.scalar(-r_mat[i, fc])
    return basis


def solve(field: Field, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution ``x`` of ``a @ x = b`` or ``None`` when inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    a = field.array(a)
    b = field.array(b)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    if a.shape[0] == 0:
        x = field.zeros(n, b.shape[1])
        return x[:, 0] if vector else x
    r_mat, pivots = rref(field, np.hstack([a, b]), pivot_cols=n)
    rk = len(pivots)
    if np.any(r_mat[rk:, n:] != 0):
        return None
    x = field.zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r_mat[i, n:]
    return x[:, 0] if vector else x


def column_space_basis(field: Field, a: np.ndarray) -> np.ndarray:
    """Linearly independent columns of ``a`` spanning its column space."""
    a = field.array(a)
    if a.shape[1] == 0:
        return a
    _, pivots = rref(field, a)
    return a[:, pivots]


def complement_basis(field: Field, sub: np.ndarray, dim: int) -> np.ndarray:
    """Standard basis vectors completing the columns of ``sub`` to a basis of ``k^dim``."""
    chosen = []
    current = field.array(sub) if sub.size else field.zeros(dim, 0)
    rk = rank(field, current.T) if current.shape[1] else 0
    for i in range(dim):
        e = field.zeros(dim, 1)
        e[i, 0] = field.scalar(1)
        trial = np.hstack([current, e])
        r2 = rank(field, trial.T)
        if r2 > rk:
            current, rk = trial, r2
            chosen.append(i)
    out = field.zeros(dim, len(chosen))
    for j, i in enumerate(chosen):
        out[i, j] = field.scalar(1)
    return out


def is_invertible(field: Field, a: np.ndarray) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(field, a) == a.shape[0]


def all_matrices(field: Field, rows: int, cols: int) -> Iterator[np.ndarray]:
    """Every ``rows x cols`` matrix over a finite field, in lexicographic order."""
    for entries in product(tuple(field.elements()), repeat=rows * cols):
        yield field.array(np.array(entries, dtype=np.int64).reshape(rows, cols))


def linear_combinations(field: Field, basis: Sequence[np.ndarray]) -> Iterator[np.ndarray]:
    """All linear combinations of ``basis`` over a finite field."""
    if not basis:
        return
    for coeffs in product(tuple(field.elements()), repeat=len(basis)):
        acc = basis[0] * coeffs[0]
        for c, b in zip(coeffs[1:], basis[1:]):
            acc = acc + b * c
        yield field.reduce(acc)


def to_strings(field: Field, a: np.ndarray) -> list[list[str]]:
    return [[field.encode(x) for x in row] for row in np.asarray(a)]


def from_strings(field: Field, rows: Iterable[Iterable[str]], shape: tuple[int, int]) -> np.ndarray:
    data = [[field.decode(x) for x in row] for row in rows]
    if shape[0] == 0 or shape[1] == 0:
        return field.zeros(*shape)
    return field.array(np.array(data, dtype=object))


def batch_rank(p: int, a: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices ``a[b]`` over GF(p), eliminating all of them at once."""
    a = np.mod(np.asarray(a, dtype=np.int64), p)
    n_batch, rows, cols = a.shape
    if n_batch == 0 or rows == 0 or cols == 0:
        return np.zeros(n_batch, dtype=np.int64)
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(x, -1, p) for x in range(1, p)]
    a = a.copy()
    prow = np.zeros(n_batch, dtype=np.int64)
    row_ids = np.arange(rows)
    for c in range(cols):
        mask = (a[:, :, c] != 0) & (row_ids[None, :] >= prow[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = mask[b].argmax(axis=1)
        tgt = prow[b]
        top = a[b, tgt].copy()
        a[b, tgt] = a[b, piv]
        a[b, piv] = top
        pivot_row = np.mod(a[b, tgt] * inv[a[b, tgt, c]][:, None], p)
        factors = a[b, :, c].copy()
        factors[np.arange(b.size), tgt] = 0
        a[b] = np.mod(a[b] - factors[:, :, None] * pivot_row[:, None, :], p)
        a[b, tgt] = pivot_row
        prow[b] += 1
    return prow
