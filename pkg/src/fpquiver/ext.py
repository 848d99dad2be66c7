"""Projective modules, syzygies and Ext^1, with a cocycle-based cross-check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .linalg import Field, complement_basis, kernel_basis, rank, rref, solve
from .quiver import BoundQuiver, Path, QuiverError, path_basis
from .representation import Representation, _check_pair, hom_space


@dataclass(frozen=True, eq=False)
class ProjectiveModule:
    """``P(i)``: basis of residue paths starting at ``i``, arrows act by left concatenation."""

    vertex: int
    rep: Representation
    labels: Mapping[int, tuple[Path, ...]]


def projective(bq: BoundQuiver, i: int, field: Field) -> ProjectiveModule:
    if i not in bq.vertices:
        raise QuiverError(f"unknown vertex {i}")
    pb = path_basis(bq, field)
    labels = {v: pb.paths(i, v) for v in bq.vertices}
    maps = {}
    for a in bq.arrows:
        src, tgt = labels[a.source], labels[a.target]
        m = field.zeros(len(tgt), len(src))
        for j, p in enumerate(src):
            q = Path((a.name,) + p.arrows, p.source, a.target)
            m[:, j] = pb.reduce(q)
        maps[a.name] = m
    rep = Representation(bq, field, {v: len(labels[v]) for v in bq.vertices}, maps)
    return ProjectiveModule(i, rep, labels)


def radical_basis(M: Representation) -> dict[int, np.ndarray]:
    """Columns spanning ``rad M`` at each vertex: the sum of images of incoming arrows."""
    f = M.field
    out = {}
    for v in M.bq.vertices:
        imgs = [M.maps[a.name] for a in M.bq.arrows if a.target == v and M.maps[a.name].size]
        if imgs and M.dims[v]:
            stacked = np.hstack(imgs)
            out[v] = stacked[:, rref(f, stacked)[1]]
        else:
            out[v] = f.zeros(M.dims[v], 0)
    return out


def _sub_representation(M: Representation, bases: Mapping[int, np.ndarray]) -> Representation:
    """Subrepresentation spanned by the given column bases (assumed arrow-stable)."""
    f = M.field
    maps = {}
    for a in M.bq.arrows:
        src, tgt = bases[a.source], bases[a.target]
        if src.shape[1] == 0 or tgt.shape[1] == 0:
            maps[a.name] = f.zeros(tgt.shape[1], src.shape[1])
            continue
        coords = solve(f, tgt, f.matmul(M.maps[a.name], src))
        if coords is None:
            raise ValueError(f"subspace is not stable under arrow {a.name}")
        maps[a.name] = coords
    return Representation(M.bq, f, {v: bases[v].shape[1] for v in M.bq.vertices}, maps)


def top_radical(M: Representation) -> tuple[dict[int, int], Representation]:
    """Top dimension vector ``M / rad M`` and the radical as a subrepresentation."""
    rad = radical_basis(M)
    top = {v: M.dims[v] - rad[v].shape[1] for v in M.bq.vertices}
    return top, _sub_representation(M, rad)


@dataclass(frozen=True, eq=False)
class Presentation:
    """``0 -> Omega --iota--> P0 --pi--> M -> 0``.

    ``generators`` lists ``(vertex, top vector)`` pairs, one summand ``P(vertex)`` each.
    """

    module: Representation
    generators: tuple[tuple[int, np.ndarray], ...]
    p0: Representation
    labels: Mapping[int, tuple[tuple[int, Path], ...]]
    pi: Mapping[int, np.ndarray]
    omega: Representation
    iota: Mapping[int, np.ndarray]


def syzygy(M: Representation) -> Presentation:
    f = M.field
    bq = M.bq
    rad = radical_basis(M)
    gens = []
    for v in bq.vertices:
        comp = complement_basis(f, rad[v], M.dims[v])
        gens += [(v, comp[:, j]) for j in range(comp.shape[1])]
    pb = path_basis(bq, f)
    labels = {w: tuple((g, p) for g, (v, _) in enumerate(gens) for p in pb.paths(v, w)) for w in bq.vertices}
    index = {w: {lab: k for k, lab in enumerate(labels[w])} for w in bq.vertices}

    maps = {}
    for a in bq.arrows:
        m = f.zeros(len(labels[a.target]), len(labels[a.source]))
        for j, (g, p) in enumerate(labels[a.source]):
            coords = pb.reduce(Path((a.name,) + p.arrows, p.source, a.target))
            for k, q in enumerate(pb.paths(p.source, a.target)):
                if coords[k] != 0:
                    m[index[a.target][(g, q)], j] = coords[k]
        maps[a.name] = m
    p0 = Representation(bq, f, {w: len(labels[w]) for w in bq.vertices}, maps)

    pi = {}
    for w in bq.vertices:
        m = f.zeros(M.dims[w], len(labels[w]))
        for j, (g, p) in enumerate(labels[w]):
            if M.dims[w]:
                m[:, j] = f.matmul(M.path_matrix(p), gens[g][1].reshape(-1, 1))[:, 0]
        pi[w] = m
    iota = {w: kernel_basis(f, pi[w]) if pi[w].shape[0] else f.eye(p0.dims[w]) for w in bq.vertices}
    omega = _sub_representation(p0, iota)
    return Presentation(M, tuple(gens), p0, labels, pi, omega, iota)


def ext1_dim(M: Representation, N: Representation) -> int:
    """``dim Ext^1(M, N)`` as the cokernel of ``Hom(P0, N) -> Hom(Omega, N)``."""
    _check_pair(M, N)
    return ext1_from_presentation(syzygy(M), N)


def ext1_from_presentation(pres: Presentation, N: Representation) -> int:
    """``dim Ext^1(M, N)`` reusing a presentation of ``M``."""
    f = N.field
    bq = N.bq
    omega = pres.omega
    h = hom_space(omega, N)
    if h.dim == 0:
        return 0
    # each generator g at v and vector n in N_v gives phi: path p -> N_p n
    restricted = []
    for g, (v, _) in enumerate(pres.generators):
        for e in range(N.dims[v]):
            n = f.zeros(N.dims[v], 1)
            n[e, 0] = f.scalar(1)
            parts = []
            for w in bq.vertices:
                phi = f.zeros(N.dims[w], len(pres.labels[w]))
                for j, (g2, p) in enumerate(pres.labels[w]):
                    if g2 == g and N.dims[w]:
                        phi[:, j] = f.matmul(N.path_matrix(p), n)[:, 0]
                parts.append(f.matmul(phi, pres.iota[w]).ravel())
            restricted.append(np.concatenate(parts) if parts else f.zeros(0, 1)[:, 0])
    if not restricted:
        return h.dim
    return h.dim - rank(f, np.vstack(restricted))


def _vec_coeff(f: Field, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Matrix of ``X -> left @ X @ right`` on row-major ``vec(X)``."""
    return f.reduce(np.kron(left, right.T))


def ext1_cocycle_dim(M: Representation, N: Representation) -> int:
    """``dim Ext^1(M, N)`` from block upper-triangular extensions ``[[N_a, X_a], [0, M_a]]``.

    Cocycles are the ``X`` making every relation vanish on the middle term;
    coboundaries are ``X_a = N_a h_s - h_t M_a``.
    """
    _check_pair(M, N)
    f = M.field
    bq = M.bq
    off, pos = {}, 0
    for a in bq.arrows:
        off[a.name] = pos
        pos += N.dims[a.target] * M.dims[a.source]
    if pos == 0:
        return 0
    rows = []
    for rel in bq.relations:
        nr = N.dims[rel.target] * M.dims[rel.source]
        if nr == 0:
            continue
        block = f.zeros(nr, pos)
        for c, p in rel.terms:
            names = p.arrows
            for k, name in enumerate(names):
                a = bq.quiver.arrow(name)
                left = N.path_matrix(Path(names[:k], a.target, rel.target))
                right = M.path_matrix(Path(names[k + 1:], rel.source, a.source))
                size = N.dims[a.target] * M.dims[a.source]
                if size:
                    block[:, off[name]: off[name] + size] += _vec_coeff(f, left, right) * f.scalar(c)
        rows.append(f.reduce(block))
    cocycle_dim = pos - (rank(f, np.vstack(rows)) if rows else 0)

    hoff, hpos = {}, 0
    for v in bq.vertices:
        hoff[v] = hpos
        hpos += N.dims[v] * M.dims[v]
    if hpos == 0:
        return cocycle_dim
    delta = f.zeros(pos, hpos)
    for a in bq.arrows:
        s, t = a.source, a.target
        size = N.dims[t] * M.dims[s]
        if size == 0:
            continue
        r = slice(off[a.name], off[a.name] + size)
        if N.dims[s]:
            delta[r, hoff[s]: hoff[s] + N.dims[s] * M.dims[s]] += _vec_coeff(f, N.maps[a.name], f.eye(M.dims[s]))
        if M.dims[t]:
            delta[r, hoff[t]: hoff[t] + N.dims[t] * M.dims[t]] -= _vec_coeff(f, f.eye(N.dims[t]), M.maps[a.name])
    return cocycle_dim - rank(f, f.reduce(delta))


def euler_form(bq: BoundQuiver, d: Sequence[int] | Mapping[int, int], e: Sequence[int] | Mapping[int, int]) -> int:
    """``<d, e> = sum_v d(v) e(v) - sum_{a: s -> t} d(s) e(t)`` for a quiver without relations."""
    if bq.relations:
        raise QuiverError("the Euler form identity needs a quiver without relations")
    if not isinstance(d, Mapping):
        d = dict(zip(bq.vertices, d))
    if not isinstance(e, Mapping):
        e = dict(zip(bq.vertices, e))
    return (sum(d[v] * e[v] for v in bq.vertices)
            - sum(d[a.source] * e[a.target] for a in bq.arrows))
