"""Brute-force enumeration of modules and bricks over GF(p), brick sets and Frobenius-Perron lower bounds.

Matrix tuples for a dimension vector are generated arrow by arrow as one
numpy batch; a relation is checked as soon as all of its arrows carry
matrices.  Isomorphism classes are separated by generating the full
``GL(d)``-orbit of each new representative and taking the lexicographically
smallest code in the orbit as its canonical encoding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .ext import ext1_dim, ext1_from_presentation, syzygy
from .linalg import GF, Field, batch_rank, solve
from .quiver import BoundQuiver, QuiverError, check_admissible, check_loop_commutativity, loop_reduce
from .representation import (
    Representation, are_isomorphic, extend_by_zero, fingerprint, hom_dim, restrict, simple,
)
from .builders import SINK, SOURCE
from .spectral import Radius, isolated_max_value, run_max_value, spectral_radius

DEFAULT_BUDGET = 1 << 22
ORBIT_LIMIT = 1 << 17
CHUNK = 1 << 14


class EnumerationError(ValueError):
    """Enumeration was asked for something it cannot do (e.g. an infinite field)."""


class WitnessNotFound(LookupError):
    """No module satisfies the witness conditions within the enumerated range."""


def _finite(field: Field) -> int:
    if field.size is None:
        raise EnumerationError("matrix-tuple enumeration needs a finite prime field")
    return field.size


def _as_cap(bq: BoundQuiver, cap) -> dict[int, int]:
    if isinstance(cap, Mapping):
        out = {v: int(cap.get(v, 0)) for v in bq.vertices}
    elif isinstance(cap, int):
        out = {v: cap for v in bq.vertices}
    else:
        cap = list(cap)
        if len(cap) != len(bq.vertices):
            raise ValueError(f"cap needs {len(bq.vertices)} entries, got {len(cap)}")
        out = dict(zip(bq.vertices, (int(c) for c in cap)))
    if any(c < 0 for c in out.values()):
        raise ValueError("cap entries must be non-negative")
    return out


def _support_connected(bq: BoundQuiver, dims: Mapping[int, int]) -> bool:
    support = {v for v in bq.vertices if dims[v]}
    if not support:
        return False
    start = min(support)
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for a in bq.arrows:
            for x, y in ((a.source, a.target), (a.target, a.source)):
                if x == v and y in support and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen == support


def dimension_vectors(bq: BoundQuiver, cap, connected_only: bool = False) -> list[dict[int, int]]:
    """Nonzero dimension vectors below ``cap``, graded by total dimension then lexicographic."""
    cap = _as_cap(bq, cap)
    out = []
    for d in product(*(range(cap[v] + 1) for v in bq.vertices)):
        dims = dict(zip(bq.vertices, d))
        if not any(d):
            continue
        if connected_only and not _support_connected(bq, dims):
            continue
        out.append(dims)
    out.sort(key=lambda dims: (sum(dims.values()), tuple(dims[v] for v in bq.vertices)))
    return out


def _all_matrices(p: int, rows: int, cols: int) -> np.ndarray:
    n = rows * cols
    if n == 0:
        return np.zeros((1, rows, cols), dtype=np.int8)
    digits = np.array(list(product(range(p), repeat=n)), dtype=np.int8)
    return digits.reshape(-1, rows, cols)


def _arrow_order(bq: BoundQuiver, zero_loops: bool) -> list:
    plain = [a for a in bq.arrows if not a.is_loop]
    loops = sorted((a for a in bq.arrows if a.is_loop), key=lambda a: (a.source, a.name))
    return plain + ([] if zero_loops else loops)


def _relation_holds(bq: BoundQuiver, rel, batch: Mapping[str, np.ndarray], dims, p: int, n: int) -> np.ndarray:
    acc = np.zeros((n, dims[rel.target], dims[rel.source]), dtype=np.int64)
    for c, path in rel.terms:
        prod_ = None
        for name in reversed(path.arrows):
            m = batch[name].astype(np.int64)
            prod_ = m if prod_ is None else np.mod(np.matmul(m, prod_), p)
        acc = np.mod(acc + int(c) % p * prod_, p)
    return ~acc.reshape(n, -1).any(axis=1)


def _valid_batch(bq: BoundQuiver, dims: Mapping[int, int], p: int, zero_loops: bool,
                 budget: int) -> Optional[dict[str, np.ndarray]]:
    """All matrix tuples satisfying the relations, or ``None`` when the budget is exceeded."""
    batch: dict[str, np.ndarray] = {}
    n = 1
    assigned: set[str] = set()
    pending = list(bq.relations)
    order = _arrow_order(bq, zero_loops)
    for a in bq.arrows:
        if a not in order:
            batch[a.name] = np.zeros((1, dims[a.target], dims[a.source]), dtype=np.int8)
            assigned.add(a.name)
    for a in order:
        mats = _all_matrices(p, dims[a.target], dims[a.source])
        k = mats.shape[0]
        if n * k > budget:
            return None
        for name in batch:
            batch[name] = np.repeat(batch[name], k, axis=0)
        batch[a.name] = np.tile(mats, (n, 1, 1))
        n *= k
        assigned.add(a.name)
        ready = [r for r in pending if r.arrow_names() <= assigned]
        pending = [r for r in pending if not r.arrow_names() <= assigned]
        for rel in ready:
            if dims[rel.source] and dims[rel.target]:
                keep = _relation_holds(bq, rel, batch, dims, p, n)
                batch = {name: m[keep] for name, m in batch.items()}
                n = int(keep.sum())
    for rel in pending:  # relations that only involve arrows left at zero
        if dims[rel.source] and dims[rel.target]:
            keep = _relation_holds(bq, rel, batch, dims, p, n)
            batch = {name: m[keep] for name, m in batch.items()}
            n = int(keep.sum())
    return batch


def _batch_size(batch: Mapping[str, np.ndarray]) -> int:
    return next(iter(batch.values())).shape[0] if batch else 1


def _end_dims(bq: BoundQuiver, dims: Mapping[int, int], p: int, batch: Mapping[str, np.ndarray]) -> np.ndarray:
    """``dim End`` of every tuple in the batch, via batched ranks of the intertwiner system."""
    off, nvars = {}, 0
    for v in bq.vertices:
        off[v] = nvars
        nvars += dims[v] ** 2
    n = _batch_size(batch)
    arrows = [a for a in bq.arrows if dims[a.source] and dims[a.target]]
    rows = sum(dims[a.target] * dims[a.source] for a in arrows)
    if rows == 0:
        return np.full(n, nvars, dtype=np.int64)
    out = np.empty(n, dtype=np.int64)
    for start in range(0, n, CHUNK):
        stop = min(n, start + CHUNK)
        sysm = np.zeros((stop - start, rows, nvars), dtype=np.int64)
        r0 = 0
        for a in arrows:
            s, t = a.source, a.target
            ds, dt = dims[s], dims[t]
            m = batch[a.name][start:stop].astype(np.int64)
            # f_t M - M f_s = 0 in row-major vec coordinates
            left = np.einsum("ij,bkl->bikjl", np.eye(dt, dtype=np.int64), np.swapaxes(m, 1, 2))
            right = np.einsum("bij,kl->bikjl", m, np.eye(ds, dtype=np.int64))
            sysm[:, r0:r0 + dt * ds, off[t]:off[t] + dt * dt] += left.reshape(-1, dt * ds, dt * dt)
            sysm[:, r0:r0 + dt * ds, off[s]:off[s] + ds * ds] -= right.reshape(-1, dt * ds, ds * ds)
            r0 += dt * ds
        out[start:stop] = nvars - batch_rank(p, sysm)
    return out


def _general_linear(p: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    mats = _all_matrices(p, n, n).astype(np.int64)
    if n == 0:
        return mats, mats
    ranks = batch_rank(p, mats)
    g = mats[ranks == n]
    field = GF(p)
    invs = np.stack([solve(field, m, field.eye(n)) for m in g])
    return g, invs


def _codes(bq: BoundQuiver, batch: Mapping[str, np.ndarray]) -> np.ndarray:
    n = _batch_size(batch)
    parts = [batch[a.name].reshape(n, -1) for a in bq.arrows]
    return np.concatenate(parts, axis=1).astype(np.uint8) if parts else np.zeros((n, 0), dtype=np.uint8)


class _OrbitTool:
    def __init__(self, bq: BoundQuiver, dims: Mapping[int, int], p: int):
        self.bq, self.dims, self.p = bq, dims, p
        self.groups = {v: _general_linear(p, dims[v]) for v in bq.vertices}
        self.size = math.prod(g.shape[0] for g, _ in self.groups.values())
        self._cols = None

    def _columns(self) -> dict[int, np.ndarray]:
        if self._cols is None:
            vs = list(self.bq.vertices)
            idx = np.array(list(product(*(range(self.groups[v][0].shape[0]) for v in vs))), dtype=np.int64)
            self._cols = {v: idx[:, k] for k, v in enumerate(vs)}
        return self._cols

    def orbit_codes(self, maps: Mapping[str, np.ndarray]) -> np.ndarray:
        col = self._columns()
        parts = []
        for a in self.bq.arrows:
            g_t = self.groups[a.target][0][col[a.target]]
            ginv_s = self.groups[a.source][1][col[a.source]]
            m = maps[a.name]
            moved = np.mod(np.matmul(np.matmul(g_t, m[None]), ginv_s), self.p)
            parts.append(moved.reshape(self.size, -1))
        if not parts:
            return np.zeros((1, 0), dtype=np.uint8)
        return np.concatenate(parts, axis=1).astype(np.uint8)


def _rep_from_code(bq: BoundQuiver, dims, field: Field, code: np.ndarray) -> Representation:
    maps, pos = {}, 0
    for a in bq.arrows:
        r, c = dims[a.target], dims[a.source]
        maps[a.name] = code[pos:pos + r * c].astype(np.int64).reshape(r, c)
        pos += r * c
    return Representation(bq, field, dims, maps)


def _classes(bq: BoundQuiver, dims, field: Field, batch, keep: np.ndarray,
             orbit_limit: int) -> list[tuple[bytes, Representation]]:
    """One canonical representative per isomorphism class among the kept tuples."""
    p = field.size
    codes = _codes(bq, batch)[keep]
    out: list[tuple[bytes, Representation]] = []
    tool = _OrbitTool(bq, dims, p)
    if tool.size <= orbit_limit:
        seen: set[bytes] = set()
        for row in codes:
            key = row.tobytes()
            if key in seen:
                continue
            rep = _rep_from_code(bq, dims, field, row)
            orbit = tool.orbit_codes(rep.maps)
            keys = [r.tobytes() for r in orbit]
            seen.update(keys)
            canon = min(keys)
            out.append((canon, _rep_from_code(bq, dims, field, np.frombuffer(canon, dtype=np.uint8))))
        return out
    # orbit too large to list: fingerprint buckets plus isomorphism search
    simples = [simple(bq, v, field) for v in bq.vertices]
    buckets: dict[tuple, list[Representation]] = {}
    for row in codes:
        rep = _rep_from_code(bq, dims, field, row)
        fp = fingerprint(rep, simples)
        bucket = buckets.setdefault(fp, [])
        if not any(are_isomorphic(rep, other) for other in bucket):
            bucket.append(rep)
            out.append((row.tobytes(), rep))
    return out


@dataclass(frozen=True, eq=False)
class ModuleList:
    """Isomorphism-class representatives found below a dimension cap.

    ``exhaustive`` is true when every dimension vector under the cap was
    enumerated completely; ``skipped`` lists the ones that exceeded the budget.
    ``loops_forced_zero`` records that loop matrices were fixed to zero
    because the loop commutativity check certifies that a nonzero loop
    yields a nilpotent non-scalar endomorphism.
    """

    bq: BoundQuiver
    cap: Mapping[int, int]
    field: Field
    modules: tuple[Representation, ...]
    codes: tuple[bytes, ...]
    exhaustive: bool
    skipped: tuple[tuple[int, ...], ...] = ()
    loops_forced_zero: bool = False
    bricks_only: bool = False

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __getitem__(self, i):
        return self.modules[i]


BrickList = ModuleList


def _enumerate(bq: BoundQuiver, cap, field: Field, budget: int, bricks_only: bool, prune: bool,
               orbit_limit: int) -> ModuleList:
    p = _finite(field)
    if p > 255:
        raise EnumerationError("enumeration supports primes below 256")
    report = check_admissible(bq, field=field)
    if not report.admissible:
        raise QuiverError(f"bound quiver is not admissible: {report.reason}")
    cap_d = _as_cap(bq, cap)
    zero_loops = False
    if bricks_only and prune and bq.quiver.loops():
        zero_loops = check_loop_commutativity(bq, field)[0]
    found: list[tuple[tuple, bytes, Representation]] = []
    skipped = []
    for dims in dimension_vectors(bq, cap_d, connected_only=bricks_only and prune):
        dv = tuple(dims[v] for v in bq.vertices)
        batch = _valid_batch(bq, dims, p, zero_loops, budget)
        if batch is None:
            skipped.append(dv)
            continue
        n = _batch_size(batch)
        if n == 0:
            continue
        keep = _end_dims(bq, dims, p, batch) == 1 if bricks_only else np.ones(n, dtype=bool)
        if not keep.any():
            continue
        for code, rep in _classes(bq, dims, field, batch, keep, orbit_limit):
            found.append(((sum(dv), dv), code, rep))
    found.sort(key=lambda t: (t[0], t[1]))
    return ModuleList(bq, cap_d, field, tuple(r for _, _, r in found), tuple(c for _, c, _ in found),
                      not skipped, tuple(skipped), zero_loops, bricks_only)


def enumerate_modules(bq: BoundQuiver, cap, field: Field = GF(2), budget: int = DEFAULT_BUDGET,
                      orbit_limit: int = ORBIT_LIMIT) -> ModuleList:
    """Every isomorphism class of nonzero modules with dimension vector ``<= cap``."""
    return _enumerate(bq, cap, field, budget, False, False, orbit_limit)


def enumerate_bricks(bq: BoundQuiver, cap, field: Field = GF(2), budget: int = DEFAULT_BUDGET,
                     prune: bool = True, orbit_limit: int = ORBIT_LIMIT) -> ModuleList:
    """Bricks (``dim End = 1``) up to isomorphism with dimension vector ``<= cap``.

    With ``prune`` on, dimension vectors with disconnected support are
    skipped (such modules split), and loop matrices are fixed to zero when
    the loop commutativity check passes.  Both skips are certified.
    """
    return _enumerate(bq, cap, field, budget, True, prune, orbit_limit)


@dataclass(frozen=True, eq=False)
class BrickTables:
    hom: np.ndarray
    ext: np.ndarray


def brick_tables(modules: Sequence[Representation]) -> BrickTables:
    n = len(modules)
    hom = np.zeros((n, n), dtype=np.int64)
    ext = np.zeros((n, n), dtype=np.int64)
    for i, m in enumerate(modules):
        for j, x in enumerate(modules):
            hom[i, j] = hom_dim(m, x)
    for i, m in enumerate(modules):
        pres = syzygy(m)
        for j, x in enumerate(modules):
            ext[i, j] = ext1_from_presentation(pres, x)
    return BrickTables(hom, ext)


@dataclass(frozen=True, eq=False)
class BrickSet:
    indices: tuple[int, ...]
    members: tuple[Representation, ...]
    adjacency: np.ndarray


def enumerate_brick_sets(bricks: Sequence[Representation], max_size: int,
                         tables: Optional[BrickTables] = None) -> Iterator[BrickSet]:
    """Hom-orthogonal subsets of size ``<= max_size`` in lexicographic index order."""
    bricks = tuple(bricks)
    if tables is None:
        tables = brick_tables(bricks)
    hom, ext = tables.hom, tables.ext
    n = len(bricks)
    usable = [i for i in range(n) if hom[i, i] == 1]

    def grow(chosen: list[int], start: int):
        for pos in range(start, len(usable)):
            i = usable[pos]
            if any(hom[i, j] or hom[j, i] for j in chosen):
                continue
            members = chosen + [i]
            idx = tuple(members)
            yield BrickSet(idx, tuple(bricks[k] for k in idx), ext[np.ix_(idx, idx)].copy())
            if len(members) < max_size:
                yield from grow(members, pos + 1)

    if max_size >= 1:
        yield from grow([], 0)


@dataclass(frozen=True)
class Prediction:
    value: Optional[float]
    interval: Optional[tuple[float, float]]
    rule: str


@dataclass(frozen=True, eq=False)
class FpEstimate:
    best: float
    method: str
    witness: Optional[BrickSet]
    bricks: ModuleList
    tables: BrickTables
    max_size: int
    sets_examined: int
    prediction: Optional[Prediction]

    @property
    def exhaustive(self) -> bool:
        return self.bricks.exhaustive


def _counts(origin) -> tuple[Optional[tuple], dict[int, int]]:
    if origin and origin[0] == "loop_extend":
        return origin[1], dict(origin[2])
    return origin, {}


def predict_fpdim(bq: BoundQuiver) -> Optional[Prediction]:
    """Closed-form value for the built-in families, when their hypotheses hold."""
    base, counts = _counts(bq.origin)
    if not base:
        return None
    loops = {v: counts.get(v, 0) for v in bq.vertices}
    n_max = max(loops.values()) if loops else 0
    kind = base[0]
    if kind == "dynkin":
        return Prediction(float(n_max), None, "loop-extended representation-directed algebra: maximum loop count")
    if kind == "tube":
        return Prediction(1.0, None, "nilpotent cyclic quiver (tube): value 1") if not counts else None
    if kind == "four_vertex":
        n1, n2, n3, n4 = (loops[v] for v in (1, 2, 3, 4))
        value = max((n2 + math.sqrt(n2 * n2 + 4)) / 2, n1, n3, n4)
        return Prediction(value, None, "four-vertex example: max((N2 + sqrt(N2^2 + 4)) / 2, N1, N3, N4)")
    if kind == "canonical" and n_max >= 1:
        ends = max(loops[SINK], loops[SOURCE])
        arm = {v: c for v, c in loops.items() if v not in (SINK, SOURCE)}
        top_arm = [v for v, c in arm.items() if c == n_max]
        interval = (float(n_max), float(n_max + 1))
        rest = max([c for v, c in arm.items() if c != n_max], default=0)
        if ends == n_max and not top_arm:
            return Prediction(float(n_max), interval, "canonical type, maximum at sink or source: n_max")
        if len(top_arm) == 1 and rest < n_max:
            return Prediction(isolated_max_value(n_max), interval,
                              "canonical type, single arm vertex attains n_max: (n + sqrt(n^2 + 4)) / 2")
        if top_arm and len({v // 100 for v in top_arm}) == 1:
            js = sorted(v % 100 for v in top_arm)
            if js == list(range(js[0], js[0] + len(js))):
                return Prediction(run_max_value(n_max, len(js)), interval,
                                  f"canonical type, run of {len(js)} arm vertices at n_max: rho(x (x - n)^s - 1)")
        return Prediction(None, interval, "canonical type: value in [n_max, n_max + 1)")
    return None


def fpdim_search(bq: BoundQuiver, cap, max_size: int = 3, field: Field = GF(2), tol: float = 1e-9,
                 budget: int = DEFAULT_BUDGET, bricks: Optional[ModuleList] = None) -> FpEstimate:
    """Maximise ``rho`` of brick-set adjacency matrices: a certified lower bound for fpdim."""
    if bricks is None:
        bricks = enumerate_bricks(bq, cap, field, budget)
    tables = brick_tables(bricks.modules)
    cache: dict[bytes, Radius] = {}
    best, method, witness, count = 0.0, "exact", None, 0
    for bs in enumerate_brick_sets(bricks.modules, max_size, tables):
        count += 1
        key = bytes(str(bs.adjacency.shape), "ascii") + bs.adjacency.tobytes()
        if key not in cache:
            cache[key] = spectral_radius(bs.adjacency, tol)
        r = cache[key]
        better = witness is None or r.value > best + tol
        if better or (r.value >= best - tol and len(bs.indices) < len(witness.indices)):
            best, method, witness = max(best, r.value) if not better else r.value, r.method, bs
    return FpEstimate(best, method, witness, bricks, tables, max_size, count, predict_fpdim(bq))


def tube_witness(bq: BoundQuiver, first: int, second: int, field: Field = GF(2), cap=None) -> Representation:
    """A brick ``M`` with ``Ext^1(S_first, M) = 1``, ``Ext^1(M, S_second) = 1`` and ``{S_first, S_second, M}`` a brick set.

    Candidates are the enumerated bricks in order of total dimension.
    """
    if first == second:
        raise ValueError("the two simples must be different")
    s1, s2 = simple(bq, first, field), simple(bq, second, field)
    if ext1_dim(s1, s2) != 0:
        raise ValueError(f"Ext^1(S{first}, S{second}) must vanish")
    if cap is None:
        cap = {v: 1 for v in bq.vertices}
    for m in enumerate_bricks(bq, cap, field).modules:
        if m.dim_vector in (s1.dim_vector, s2.dim_vector):
            continue
        if hom_dim(m, s1) or hom_dim(s1, m) or hom_dim(m, s2) or hom_dim(s2, m):
            continue
        if ext1_dim(s1, m) == 1 and ext1_dim(m, s2) == 1:
            return m
    bound = bq.origin[2] if bq.origin and bq.origin[0] == "tube" else None
    raise WitnessNotFound(f"no witness for (S{first}, S{second}) within nilpotency bound {bound} and cap {cap}")


@dataclass(frozen=True, eq=False)
class LoopReport:
    algebra: BoundQuiver
    reduced: BoundQuiver
    bricks_a: ModuleList
    bricks_b: ModuleList
    modules_b: ModuleList
    self_ext: dict[int, tuple[int, int]]
    checks: dict[str, int]
    violations: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def loop_extension_report(a_bq: BoundQuiver, cap, field: Field = GF(2), budget: int = DEFAULT_BUDGET) -> LoopReport:
    """Compare a loop-extended algebra with its loop reduction on enumerated modules.

    Checks: bricks correspond (all loops act by zero), Hom agrees on brick
    pairs, Ext^1 agrees on module pairs with vanishing Hom over the
    reduction and on non-simple bricks, and ``Ext^1(S_P, S_P)`` equals the
    number of loops at ``P``.  Bricks of the loop-extended algebra are found
    without the loop shortcut.
    """
    ok, bad = check_loop_commutativity(a_bq, field)
    if not ok:
        raise QuiverError(f"loop commutativity fails: {', '.join(bad)}")
    b_bq = loop_reduce(a_bq, field)
    bricks_a = enumerate_bricks(a_bq, cap, field, budget, prune=False)
    bricks_b = enumerate_bricks(b_bq, cap, field, budget, prune=False)
    modules_b = enumerate_modules(b_bq, cap, field, budget)
    violations: list[str] = []
    checks = {"brick_bijection": 0, "hom_equal": 0, "ext_hom_vanishing": 0, "ext_nonsimple_brick": 0,
              "self_ext_simple": 0}

    def up(m: Representation) -> Representation:
        return extend_by_zero(m, a_bq)

    matched = set()
    for m in bricks_a:
        checks["brick_bijection"] += 1
        if not m.loops_vanish():
            violations.append(f"brick {m.dim_vector} of the loop-extended algebra has a nonzero loop")
            continue
        down = restrict(m, b_bq)
        hits = [i for i, x in enumerate(bricks_b) if are_isomorphic(down, x)]
        if len(hits) != 1 or hits[0] in matched:
            violations.append(f"brick {m.dim_vector} has no unique partner after removing loops")
            continue
        matched.add(hits[0])
    if len(matched) != len(bricks_b):
        violations.append(f"{len(bricks_b) - len(matched)} bricks of the reduced algebra have no partner")
    for m in bricks_b:
        for n in bricks_b:
            checks["hom_equal"] += 1
            if hom_dim(up(m), up(n)) != hom_dim(m, n):
                violations.append(f"Hom differs on bricks {m.dim_vector}, {n.dim_vector}")
    mods = list(modules_b)
    pres_a = [syzygy(up(m)) for m in mods]
    pres_b = [syzygy(m) for m in mods]
    for i, m in enumerate(mods):
        for j, n in enumerate(mods):
            if hom_dim(m, n) == 0:
                checks["ext_hom_vanishing"] += 1
                ea = ext1_from_presentation(pres_a[i], up(n))
                eb = ext1_from_presentation(pres_b[i], n)
                if ea != eb:
                    violations.append(f"Ext differs on Hom-orthogonal pair {m.dim_vector}, {n.dim_vector}: {ea} vs {eb}")
    for m in bricks_b:
        if sum(m.dim_vector) > 1:
            checks["ext_nonsimple_brick"] += 1
            ea, eb = ext1_dim(up(m), up(m)), ext1_dim(m, m)
            if ea != eb:
                violations.append(f"self-Ext differs on brick {m.dim_vector}: {ea} vs {eb}")
    self_ext = {}
    counts = a_bq.loop_counts()
    for v in a_bq.vertices:
        checks["self_ext_simple"] += 1
        s = simple(a_bq, v, field)
        e = ext1_dim(s, s)
        self_ext[v] = (e, counts.get(v, 0))
        if e != counts.get(v, 0):
            violations.append(f"Ext(S{v}, S{v}) = {e} but there are {counts.get(v, 0)} loops")
    return LoopReport(a_bq, b_bq, bricks_a, bricks_b, modules_b, self_ext, checks, violations)
