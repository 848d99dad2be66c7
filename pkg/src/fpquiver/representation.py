"""Finite-dimensional representations of bound quivers, Hom spaces, bricks, isomorphism."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional, Sequence

import numpy as np

from .linalg import Field, FieldMismatchError, kernel_basis, rank
from .quiver import BoundQuiver, Path, Relation


class ShapeError(ValueError):
    """Arrow matrix shapes do not match the dimension vector."""


class SearchCeilingError(RuntimeError):
    """An exhaustive search would exceed its configured ceiling."""


@dataclass(frozen=True, eq=False)
class Representation:
    """Dimension vector plus one matrix per arrow (shape ``d(target) x d(source)``)."""

    bq: BoundQuiver
    field: Field
    dims: Mapping[int, int]
    maps: Mapping[str, np.ndarray]

    def __post_init__(self):
        dims = {v: int(self.dims.get(v, 0)) for v in self.bq.vertices}
        extra = set(self.dims) - set(dims)
        if extra:
            raise ShapeError(f"unknown vertices {sorted(extra)}")
        if any(d < 0 for d in dims.values()):
            raise ShapeError("negative dimension")
        maps = {}
        for a in self.bq.arrows:
            shape = (dims[a.target], dims[a.source])
            m = self.maps.get(a.name)
            if m is None:
                m = self.field.zeros(*shape)
            elif np.asarray(m).size == 0:
                m = self.field.zeros(*shape)
            else:
                m = self.field.array(m)
            if m.shape != shape:
                raise ShapeError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            m.setflags(write=False)
            maps[a.name] = m
        unknown = set(self.maps) - set(maps)
        if unknown:
            raise ShapeError(f"unknown arrows {sorted(unknown)}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.bq.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v in self.bq.vertices if self.dims[v])

    def path_matrix(self, path: Path) -> np.ndarray:
        if not path.arrows:
            return self.field.eye(self.dims[path.source])
        out = self.maps[path.arrows[-1]]
        for name in reversed(path.arrows[:-1]):
            out = self.field.matmul(self.maps[name], out)
        return out

    def encoding(self) -> tuple:
        """Canonical, hashable encoding used for ordering and certificates."""
        return (self.dim_vector,) + tuple(tuple(int(x) if self.field.size else x for x in self.maps[a.name].ravel())
                                          for a in self.bq.arrows)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def loops_vanish(self) -> bool:
        return all(not np.any(self.maps[a.name] != 0) for a in self.bq.quiver.loops())

    def __repr__(self) -> str:
        return f"Representation(dims={self.dim_vector}, field={self.field})"


def simple(bq: BoundQuiver, v: int, field: Field) -> Representation:
    return Representation(bq, field, {v: 1}, {})


def zero_module(bq: BoundQuiver, field: Field) -> Representation:
    return Representation(bq, field, {}, {})


def restrict(M: Representation, bq: BoundQuiver) -> Representation:
    """View ``M`` over ``bq`` (same vertices, a subset of its arrows)."""
    return Representation(bq, M.field, M.dims, {a.name: M.maps[a.name] for a in bq.arrows})


def extend_by_zero(M: Representation, bq: BoundQuiver) -> Representation:
    """View ``M`` over ``bq`` with every extra arrow acting as zero."""
    return Representation(bq, M.field, M.dims, {n: m for n, m in M.maps.items()})


def evaluate_relation(M: Representation, rel: Relation) -> np.ndarray:
    f = M.field
    out = f.zeros(M.dims[rel.target], M.dims[rel.source])
    for c, p in rel.terms:
        out = f.reduce(out + M.path_matrix(p) * f.scalar(c))
    return out


def check_representation(M: Representation) -> tuple[bool, Optional[Relation]]:
    """Whether every relation acts as zero; returns the first violated relation otherwise."""
    for rel in M.bq.relations:
        if np.any(evaluate_relation(M, rel) != 0):
            return False, rel
    return True, None


@dataclass(frozen=True, eq=False)
class HomSpace:
    source: Representation
    target: Representation
    dim: int
    basis: tuple[dict[int, np.ndarray], ...]


def _offsets(M: Representation, N: Representation) -> tuple[dict[int, int], int]:
    off, pos = {}, 0
    for v in M.bq.vertices:
        off[v] = pos
        pos += N.dims[v] * M.dims[v]
    return off, pos


def _check_pair(M: Representation, N: Representation):
    if M.field != N.field:
        raise FieldMismatchError(f"field mismatch: {M.field} vs {N.field}")
    if M.bq != N.bq:
        raise ValueError("representations live over different bound quivers")


def hom_system(M: Representation, N: Representation) -> np.ndarray:
    """Linear system whose kernel is ``Hom(M, N)`` in stacked row-major ``f_v`` coordinates."""
    _check_pair(M, N)
    f = M.field
    off, nvars = _offsets(M, N)
    blocks = []
    for a in M.bq.arrows:
        s, t = a.source, a.target
        rows = N.dims[t] * M.dims[s]
        if rows == 0:
            continue
        eq = f.zeros(rows, nvars)
        # f_t M_a - N_a f_s = 0
        if M.dims[t]:
            eq[:, off[t]: off[t] + N.dims[t] * M.dims[t]] += np.kron(f.eye(N.dims[t]), M.maps[a.name].T)
        if N.dims[s]:
            eq[:, off[s]: off[s] + N.dims[s] * M.dims[s]] -= np.kron(N.maps[a.name], f.eye(M.dims[s]))
        blocks.append(f.reduce(eq))
    if not blocks:
        return f.zeros(0, nvars)
    return np.vstack(blocks)


def hom_dim(M: Representation, N: Representation) -> int:
    _check_pair(M, N)
    _, nvars = _offsets(M, N)
    if nvars == 0:
        return 0
    sys = hom_system(M, N)
    return nvars - rank(M.field, sys)


def _unflatten(M: Representation, N: Representation, vec: np.ndarray) -> dict[int, np.ndarray]:
    off, _ = _offsets(M, N)
    return {v: vec[off[v]: off[v] + N.dims[v] * M.dims[v]].reshape(N.dims[v], M.dims[v]) for v in M.bq.vertices}


def hom_space(M: Representation, N: Representation) -> HomSpace:
    """Basis of intertwiners ``(f_v)`` with ``f_t M_a = N_a f_s`` for every arrow."""
    _check_pair(M, N)
    _, nvars = _offsets(M, N)
    if nvars == 0:
        return HomSpace(M, N, 0, ())
    ker = kernel_basis(M.field, hom_system(M, N))
    basis = tuple(_unflatten(M, N, ker[:, j]) for j in range(ker.shape[1]))
    return HomSpace(M, N, len(basis), basis)


def is_morphism(M: Representation, N: Representation, f_maps: Mapping[int, np.ndarray]) -> bool:
    fld = M.field
    for a in M.bq.arrows:
        lhs = fld.matmul(f_maps[a.target], M.maps[a.name])
        rhs = fld.matmul(N.maps[a.name], f_maps[a.source])
        if np.any(fld.reduce(lhs - rhs) != 0):
            return False
    return True


def is_brick(M: Representation) -> bool:
    return hom_dim(M, M) == 1


def direct_sum(M: Representation, N: Representation) -> Representation:
    _check_pair(M, N)
    f = M.field
    dims = {v: M.dims[v] + N.dims[v] for v in M.bq.vertices}
    maps = {}
    for a in M.bq.arrows:
        out = f.zeros(dims[a.target], dims[a.source])
        ms, mt = M.dims[a.source], M.dims[a.target]
        out[:mt, :ms] = M.maps[a.name]
        out[mt:, ms:] = N.maps[a.name]
        maps[a.name] = out
    return Representation(M.bq, f, dims, maps)


def _is_iso_map(field: Field, f_maps: Mapping[int, np.ndarray]) -> bool:
    for m in f_maps.values():
        if m.shape[0] != m.shape[1]:
            return False
        if m.shape[0] and rank(field, m) != m.shape[0]:
            return False
    return True


def _combine(field: Field, basis: Sequence[dict[int, np.ndarray]], coeffs: Sequence) -> dict[int, np.ndarray]:
    out = {}
    for v in basis[0]:
        acc = basis[0][v] * coeffs[0]
        for c, b in zip(coeffs[1:], basis[1:]):
            acc = acc + b[v] * c
        out[v] = field.reduce(acc)
    return out


def are_isomorphic(M: Representation, N: Representation, seed: int = 0, exhaustive_dim: int = 6,
                   samples: int = 64, ceiling: int = 1 << 20) -> bool:
    """Decide ``M ≅ N`` by searching ``Hom(M, N)`` for an invertible element.

    Invariants are compared first.  Over a finite field the search is
    exhaustive when ``dim Hom <= exhaustive_dim``; otherwise ``samples``
    seeded random elements are tried, and then the whole space if it has at
    most ``ceiling`` elements.  Over Q, random integer combinations with
    entries in ``[-B, B]`` where ``B = 1000 * total_dim`` are tried; by the
    Schwartz-Zippel bound each try misses an isomorphism with probability at
    most ``1/2000``, so a negative answer is wrong with probability at most
    ``2000 ** -samples``.
    """
    _check_pair(M, N)
    if M.dim_vector != N.dim_vector:
        return False
    if M.is_zero():
        return True
    if hom_dim(M, M) != hom_dim(N, N) or hom_dim(M, N) != hom_dim(N, M):
        return False
    H = hom_space(M, N)
    if H.dim == 0:
        return False
    f = M.field
    rng = random.Random(seed)
    if f.size is None:
        bound = 1000 * M.total_dim
        for _ in range(samples):
            coeffs = [f.scalar(rng.randint(-bound, bound)) for _ in H.basis]
            if _is_iso_map(f, _combine(f, H.basis, coeffs)):
                return True
        return False
    q = f.size
    if H.dim > exhaustive_dim:
        for _ in range(samples):
            coeffs = [rng.randrange(q) for _ in H.basis]
            if _is_iso_map(f, _combine(f, H.basis, coeffs)):
                return True
        if q ** H.dim > ceiling:
            raise SearchCeilingError(f"isomorphism search space {q}^{H.dim} exceeds ceiling {ceiling}")
    for coeffs in product(range(q), repeat=H.dim):
        if any(coeffs) and _is_iso_map(f, _combine(f, H.basis, coeffs)):
            return True
    return False


def fingerprint(M: Representation, simples: Sequence[Representation]) -> tuple:
    """Isomorphism invariants used before the expensive search."""
    f = M.field
    ranks = tuple(rank(f, M.maps[a.name]) if M.maps[a.name].size else 0 for a in M.bq.arrows)
    return (M.dim_vector, hom_dim(M, M),
            tuple((hom_dim(S, M), hom_dim(M, S)) for S in simples), ranks)
