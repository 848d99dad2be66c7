"""Quivers, paths, relations and bound quiver algebras.

Path convention: a written product ``p q`` means "apply ``q`` first, then
``p``" (function order).  A :class:`Path` stores its arrows in written
order, so ``Path(("a", "b"))`` with ``b: 4 -> 2`` and ``a: 2 -> 1`` is the
path ``4 -> 2 -> 1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Mapping, Optional, Sequence

import numpy as np

from .linalg import Field, QQ, rref


class QuiverError(ValueError):
    """Malformed quiver, path or relation."""


class AdmissibilityError(QuiverError):
    """The ideal is not admissible (or could not be shown to be)."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise QuiverError(f"duplicate arrow {dup!r}")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name!r} uses an undeclared vertex")

    @classmethod
    def build(cls, vertices: Sequence[int], arrows: Sequence[tuple[str, int, int]]) -> "Quiver":
        return cls(tuple(vertices), tuple(Arrow(n, s, t) for n, s, t in arrows))

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverError(f"unknown arrow {name!r}")

    @property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def loops(self, vertex: Optional[int] = None) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.is_loop and (vertex is None or a.source == vertex))

    def loop_counts(self) -> dict[int, int]:
        return {v: len(self.loops(v)) for v in self.vertices}

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = defaultdict(set)
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class Path:
    """A path in written order; ``arrows == ()`` is the trivial path at ``vertex``."""

    arrows: tuple[str, ...]
    source: int
    target: int

    def __len__(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"

    @staticmethod
    def trivial(v: int) -> "Path":
        return Path((), v, v)

    @staticmethod
    def of(quiver: Quiver, names: Sequence[str]) -> "Path":
        """Build a path from arrow names in written order, checking composability."""
        if not names:
            raise QuiverError("empty path")
        amap = quiver.arrow_map
        for n in names:
            if n not in amap:
                raise QuiverError(f"unknown arrow {n!r}")
        for left, right in zip(names, names[1:]):
            if amap[right].target != amap[left].source:
                raise QuiverError(f"path {'*'.join(names)} is not composable at {right}->{left}")
        return Path(tuple(names), amap[names[-1]].source, amap[names[0]].target)

    def compose(self, first: "Path") -> "Path":
        """``self * first``: apply ``first`` then ``self``."""
        if first.target != self.source:
            raise QuiverError(f"cannot compose {self} after {first}")
        return Path(self.arrows + first.arrows, first.source, self.target)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, ``terms = ((coeff, path), ...)``."""

    terms: tuple[tuple[int, Path], ...]

    def __post_init__(self):
        if not self.terms:
            raise QuiverError("empty relation")
        if all(c == 0 for c, _ in self.terms):
            raise QuiverError("relation has only zero coefficients")
        s, t = self.terms[0][1].source, self.terms[0][1].target
        for _, p in self.terms:
            if (p.source, p.target) != (s, t):
                raise QuiverError(f"relation paths are not parallel: {self}")

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    @property
    def min_length(self) -> int:
        return min(len(p) for _, p in self.terms)

    def arrow_names(self) -> set[str]:
        return {n for _, p in self.terms for n in p.arrows}

    def __str__(self) -> str:
        out = []
        for i, (c, p) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(p) if mag == 1 else f"{mag}*{p}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    @staticmethod
    def monomial(path: Path, coeff: int = 1) -> "Relation":
        return Relation(((coeff, path),))


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver with relations presenting ``kQ/I``.

    ``origin`` is free-form provenance (which builder, which loop counts)
    used to attach predicted values; it takes no part in equality.
    """

    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    origin: tuple = dc_field(default=(), compare=False, hash=False)

    def __post_init__(self):
        amap = self.quiver.arrow_map
        for r in self.relations:
            for _, p in r.terms:
                for n in p.arrows:
                    if n not in amap:
                        raise QuiverError(f"relation uses unknown arrow {n!r}")
                if p.arrows:
                    Path.of(self.quiver, p.arrows)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def loop_counts(self) -> dict[int, int]:
        return self.quiver.loop_counts()

    def is_loop_free(self) -> bool:
        return not self.quiver.loops()


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    nilpotency_bound: Optional[int]
    algebra_dim: Optional[int]
    witness: Optional[Path] = None
    reason: str = ""


def paths_by_length(quiver: Quiver, max_len: int, limit: int = 200_000) -> list[list[Path]]:
    """All paths grouped by length ``0..max_len`` in deterministic order."""
    out: list[list[Path]] = [[Path.trivial(v) for v in sorted(quiver.vertices)]]
    by_source = defaultdict(list)
    for a in sorted(quiver.arrows, key=lambda a: a.name):
        by_source[a.source].append(a)
    total = len(out[0])
    for n in range(1, max_len + 1):
        layer = []
        for p in out[-1]:
            for a in by_source[p.target]:
                layer.append(Path((a.name,) + p.arrows, p.source, a.target))
        layer.sort(key=lambda p: p.arrows)
        total += len(layer)
        if total > limit:
            raise AdmissibilityError(f"path space exceeds {limit} paths at length {n}")
        out.append(layer)
        if not layer:
            break
    return out


class _PathSpace:
    """Span of the paths of length ``< bound`` with the two-sided ideal image of the relations."""

    def __init__(self, bq: BoundQuiver, bound: int, field: Field):
        self.bq = bq
        self.bound = bound
        self.field = field
        layers = paths_by_length(bq.quiver, bound - 1)
        self.layers = layers
        self.paths: dict[tuple[int, int], list[Path]] = defaultdict(list)
        for layer in layers:
            for p in layer:
                self.paths[(p.source, p.target)].append(p)
        self.index = {key: {p.arrows if p.arrows else ("@", p.source): i for i, p in enumerate(ps)}
                      for key, ps in self.paths.items()}
        self._build_ideal()

    def key(self, p: Path):
        return p.arrows if p.arrows else ("@", p.source)

    def _build_ideal(self):
        ends_at = defaultdict(list)
        starts_at = defaultdict(list)
        for layer in self.layers:
            for p in layer:
                ends_at[p.target].append(p)
                starts_at[p.source].append(p)
        vectors: dict[tuple[int, int], list[dict[int, int]]] = defaultdict(list)
        for r in self.bq.relations:
            for v in ends_at[r.source]:
                if len(v) + r.min_length >= self.bound:
                    continue
                for u in starts_at[r.target]:
                    if len(u) + len(v) + r.min_length >= self.bound:
                        continue
                    src, tgt = v.source, u.target
                    vec: dict[int, int] = {}
                    for c, p in r.terms:
                        if len(u) + len(p) + len(v) >= self.bound:
                            continue
                        q = u.compose(p).compose(v)
                        j = self.index[(src, tgt)][self.key(q)]
                        vec[j] = vec.get(j, 0) + c
                    if any(x != 0 for x in vec.values()):
                        vectors[(src, tgt)].append(vec)
        self.basis: dict[tuple[int, int], list[Path]] = {}
        self.reduction: dict[tuple[int, int], np.ndarray] = {}
        for key, ps in self.paths.items():
            self._reduce_block(key, ps, vectors.get(key, []))

    def _reduce_block(self, key, ps: list[Path], rows: list[dict[int, int]]):
        f = self.field
        n = len(ps)
        # longest paths first, so ideal pivots land on the largest terms
        order = sorted(range(n), key=lambda i: (len(ps[i]), ps[i].arrows), reverse=True)
        col_of = {j: c for c, j in enumerate(order)}
        mat = f.zeros(len(rows), n)
        for i, vec in enumerate(rows):
            for j, c in vec.items():
                mat[i, col_of[j]] = f.scalar(c)
        if rows:
            red, piv = rref(f, mat)
        else:
            red, piv = mat, []
        pivot_paths = {order[c] for c in piv}
        basis = sorted((i for i in range(n) if i not in pivot_paths),
                       key=lambda i: (len(ps[i]), ps[i].arrows))
        self.basis[key] = [ps[i] for i in basis]
        bpos = {i: k for k, i in enumerate(basis)}
        red_mat = f.zeros(len(basis), n)
        for i in basis:
            red_mat[bpos[i], i] = f.scalar(1)
        for row, pc in enumerate(piv):
            pi = order[pc]
            for c in np.nonzero(red[row] != 0)[0]:
                j = order[int(c)]
                if j in bpos:
                    red_mat[bpos[j], pi] = f.scalar(-red[row, c])
        self.reduction[key] = red_mat

    def in_ideal(self, p: Path) -> bool:
        if len(p) >= self.bound:
            return True
        key = (p.source, p.target)
        return not np.any(self.reduction[key][:, self.index[key][self.key(p)]] != 0)


def _relation_length_check(bq: BoundQuiver) -> Optional[Path]:
    for r in bq.relations:
        for _, p in r.terms:
            if len(p) < 2:
                return p
    return None


def check_admissible(bq: BoundQuiver, max_len: int = 8, field: Field = QQ) -> AdmissibilityReport:
    """Find the smallest ``L <= max_len`` with every length-``L`` path in the ideal."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    short = _relation_length_check(bq)
    if short is not None:
        return AdmissibilityReport(False, None, None, short, f"relation term {short} has length < 2")
    witness = None
    for bound in range(1, max_len + 1):
        try:
            space = _PathSpace(bq, bound + 1, field)
        except AdmissibilityError as exc:
            return AdmissibilityReport(False, None, None, witness, str(exc))
        top = space.layers[bound] if bound < len(space.layers) else []
        bad = [p for p in top if not space.in_ideal(p)]
        if not bad:
            basis = path_basis(bq, field, bound)
            return AdmissibilityReport(True, bound, basis.dim)
        witness = bad[0]
    return AdmissibilityReport(False, None, None, witness,
                               f"path {witness} of length {max_len} is not in the ideal")


def nilpotency_bound(bq: BoundQuiver, max_len: int = 8, field: Field = QQ) -> int:
    rep = check_admissible(bq, max_len, field)
    if not rep.admissible:
        raise AdmissibilityError(rep.reason or "not admissible")
    return rep.nilpotency_bound


@dataclass(frozen=True)
class PathBasis:
    """Residue basis of ``kQ/I`` split by ``(source, target)``.

    ``basis[(i, j)]`` lists representative paths forming a basis of
    ``e_j A e_i``; ``reduce`` expresses any path in those coordinates.
    """

    bq: BoundQuiver
    field: Field
    bound: int
    basis: Mapping[tuple[int, int], tuple[Path, ...]]
    _space: _PathSpace = dc_field(repr=False, compare=False, hash=False)

    @property
    def dim(self) -> int:
        return sum(len(v) for v in self.basis.values())

    def paths(self, source: int, target: int) -> tuple[Path, ...]:
        return self.basis.get((source, target), ())

    def reduce(self, p: Path) -> np.ndarray:
        """Coordinates of ``p`` in ``paths(p.source, p.target)``."""
        n = len(self.paths(p.source, p.target))
        if len(p) >= self.bound:
            return self.field.zeros(n, 1)[:, 0]
        key = (p.source, p.target)
        col = self._space.index[key][self._space.key(p)]
        return self._space.reduction[key][:, col].copy()

    def is_zero(self, p: Path) -> bool:
        return not np.any(self.reduce(p) != 0)

    def reduce_combination(self, terms: Sequence[tuple[int, Path]]) -> np.ndarray:
        s, t = terms[0][1].source, terms[0][1].target
        acc = self.field.zeros(len(self.paths(s, t)), 1)[:, 0]
        for c, p in terms:
            acc = self.field.reduce(acc + self.reduce(p) * self.field.scalar(c))
        return acc

    def multiply(self, left: Path, right: Path) -> np.ndarray:
        """Coordinates of ``left * right`` (``right`` applied first)."""
        return self.reduce(left.compose(right))


@lru_cache(maxsize=256)
def path_basis(bq: BoundQuiver, field: Field = QQ, bound: Optional[int] = None) -> PathBasis:
    """Residue basis of paths of length ``< L`` modulo the ideal closure."""
    if bound is None:
        bound = nilpotency_bound(bq, field=field)
    space = _PathSpace(bq, bound, field)
    basis = {k: tuple(v) for k, v in space.basis.items() if v}
    return PathBasis(bq, field, bound, basis, space)


def check_loop_commutativity(bq: BoundQuiver, field: Field = QQ) -> tuple[bool, list[str]]:
    """Loops must kill non-loop arrows on both sides and commute pairwise."""
    loops = bq.quiver.loops()
    if not loops:
        return True, []
    pb = path_basis(bq, field)
    q = bq.quiver
    violations = []
    for g in loops:
        for a in q.arrows:
            if a.is_loop:
                continue
            if a.target == g.source:
                p = Path.of(q, [g.name, a.name])
                if not pb.is_zero(p):
                    violations.append(str(p))
            if a.source == g.source:
                p = Path.of(q, [a.name, g.name])
                if not pb.is_zero(p):
                    violations.append(str(p))
    for i, g1 in enumerate(loops):
        for g2 in loops[i + 1:]:
            if g1.source != g2.source:
                continue
            p12 = Path.of(q, [g1.name, g2.name])
            p21 = Path.of(q, [g2.name, g1.name])
            if np.any(pb.reduce_combination([(1, p12), (-1, p21)]) != 0):
                violations.append(f"{p12} - {p21}")
    return not violations, violations


def loop_name(vertex: int, k: int) -> str:
    return f"l{vertex}_{k}"


def loop_extend(bq: BoundQuiver, counts: Mapping[int, int], nilpotency: int = 2) -> BoundQuiver:
    """Add ``counts[v]`` loops at each vertex ``v`` together with the loop relations.

    New relations: loop*arrow and arrow*loop for every composable non-loop
    arrow, commutators of loops sharing a vertex, and ``loop**nilpotency``.
    """
    if not bq.is_loop_free():
        raise QuiverError("loop_extend expects a loop-free bound quiver")
    if nilpotency < 2:
        raise ValueError("loop nilpotency order must be at least 2")
    q = bq.quiver
    for v, c in counts.items():
        if v not in q.vertices:
            raise QuiverError(f"unknown vertex {v}")
        if c < 0:
            raise ValueError("loop counts must be non-negative")
    if not any(counts.values()):
        return BoundQuiver(q, bq.relations, ("loop_extend", bq.origin, tuple(sorted(counts.items())), nilpotency))
    names = {a.name for a in q.arrows}
    new_loops = []
    for v in sorted(q.vertices):
        for k in range(1, counts.get(v, 0) + 1):
            n = loop_name(v, k)
            if n in names:
                raise QuiverError(f"loop name {n!r} clashes with an existing arrow")
            new_loops.append(Arrow(n, v, v))
    quiver = Quiver(q.vertices, q.arrows + tuple(new_loops))
    rels = list(bq.relations)
    for g in new_loops:
        for a in q.arrows:
            if a.target == g.source:
                rels.append(Relation.monomial(Path.of(quiver, [g.name, a.name])))
            if a.source == g.source:
                rels.append(Relation.monomial(Path.of(quiver, [a.name, g.name])))
    for i, g1 in enumerate(new_loops):
        for g2 in new_loops[i + 1:]:
            if g1.source == g2.source:
                rels.append(Relation(((1, Path.of(quiver, [g1.name, g2.name])),
                                      (-1, Path.of(quiver, [g2.name, g1.name])))))
    for g in new_loops:
        rels.append(Relation.monomial(Path.of(quiver, [g.name] * nilpotency)))
    origin = ("loop_extend", bq.origin, tuple(sorted(counts.items())), nilpotency)
    return BoundQuiver(quiver, tuple(rels), origin)


def loop_reduce(bq: BoundQuiver, field: Field = QQ) -> BoundQuiver:
    """Delete all loops and every relation term that passes through one."""
    ok, violations = check_loop_commutativity(bq, field)
    if not ok:
        raise QuiverError(f"loop commutativity fails: {', '.join(violations)}")
    q = bq.quiver
    loop_names = {a.name for a in q.loops()}
    quiver = Quiver(q.vertices, tuple(a for a in q.arrows if not a.is_loop))
    rels = []
    for r in bq.relations:
        terms = tuple((c, p) for c, p in r.terms if not (set(p.arrows) & loop_names))
        if terms and any(c != 0 for c, _ in terms):
            rels.append(Relation(terms))
    origin = bq.origin
    if origin and origin[0] == "loop_extend":
        origin = origin[1]
    return BoundQuiver(quiver, tuple(rels), origin)
