"""Verification suites: each recomputes a family of known values and reports pass/fail per check."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable

import numpy as np

from .bricks import (
    WitnessNotFound, enumerate_brick_sets, enumerate_bricks, enumerate_modules, brick_tables, fpdim_search,
    loop_extension_report, tube_witness,
)
from .builders import cyclic_tube, dynkin, example_four_vertex
from .ext import ext1_cocycle_dim, ext1_dim, euler_form, syzygy, ext1_from_presentation
from .linalg import GF, QQ, Field
from .polynomial import commuting_tuples, poly_brick_check, poly_ext1, polynomial_fpdim_report
from .quiver import BoundQuiver, loop_extend
from .representation import Representation, hom_dim, simple
from .spectral import (
    FactoredPoly, compare_roots, cyclic_block_violations, isolated_max_value, run_max_value, shifted_root,
    spectral_radius,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        out.append(f"{self.suite}: {'PASS' if self.passed else 'FAIL'} "
                   f"({sum(c.passed for c in self.checks)}/{len(self.checks)} checks, {self.seconds:.1f}s)")
        return out


def loop_samples(n: int, k: int, seed: int = 0) -> list[tuple[int, ...]]:
    """All-zero, all-three and ``k`` seeded draws from ``{0..3}^n``."""
    rng = np.random.default_rng(seed)
    out = [(0,) * n, (3,) * n]
    out += [tuple(int(x) for x in rng.integers(0, 4, n)) for _ in range(k)]
    return out


def loop_max_instances(samples: int = 4, seed: int = 0) -> list[tuple[str, BoundQuiver, dict]]:
    """Loop-extended representation-directed quivers with their brick caps."""
    out = []
    a2 = dynkin("A", 2)
    for counts in product(range(4), repeat=2):
        out.append((f"A2 loops {counts}", loop_extend(a2, dict(zip(a2.vertices, counts))), {1: 1, 2: 1}))
    for orient in ("<<", "<>", "><"):
        a3 = dynkin("A", 3, orient)
        for counts in loop_samples(3, samples, seed):
            out.append((f"A3{orient} loops {counts}", loop_extend(a3, dict(zip(a3.vertices, counts))),
                        {v: 1 for v in a3.vertices}))
    d4 = dynkin("D", 4, "subspace")
    for counts in loop_samples(4, samples, seed + 1):
        out.append((f"D4 loops {counts}", loop_extend(d4, dict(zip(d4.vertices, counts))),
                    {v: 2 for v in d4.vertices}))
    return out


def suite_loop_max(samples: int = 4) -> SuiteResult:
    res = SuiteResult("thm4.1")
    for name, bq, cap in loop_max_instances(samples):
        t = time.perf_counter()
        est = fpdim_search(bq, cap, max_size=3)
        expected = max(bq.loop_counts().values(), default=0)
        elapsed = time.perf_counter() - t
        res.add(name, est.best == expected and elapsed < 30, f"best {est.best:g}, expected {expected}, {elapsed:.2f}s")
    return res


def _permutation_similar(a: np.ndarray, b: np.ndarray) -> bool:
    n = a.shape[0]
    if b.shape != a.shape:
        return False
    return any(np.array_equal(a[np.ix_(p, p)], b) for p in permutations(range(n)))


def suite_four_vertex() -> SuiteResult:
    res = SuiteResult("ex4.3")
    base = example_four_vertex()
    cap = {v: 2 for v in base.vertices}
    est = fpdim_search(loop_extend(base, {2: 2}), cap, max_size=3)
    target = 1 + math.sqrt(2)
    adj = est.witness.adjacency if est.witness else np.zeros((0, 0), dtype=np.int64)
    res.add("loops (0,2,0,0): best is 1+sqrt(2)", abs(est.best - target) <= 1e-9, f"best {est.best!r}")
    res.add("loops (0,2,0,0): witness pair has adjacency [[2,1],[1,0]]",
            _permutation_similar(adj, np.array([[2, 1], [1, 0]])), f"adjacency {adj.tolist()}")
    est = fpdim_search(loop_extend(base, {1: 3, 2: 2}), cap, max_size=3)
    res.add("loops (3,2,0,0): best is 3", abs(est.best - 3) <= 1e-9, f"best {est.best!r}")
    return res


def tube_block_check(n: int, ell: int) -> tuple[float, bool, int, int]:
    """Best radius, whether the simples attain 1, number of brick sets, and block violations."""
    bq = cyclic_tube(n, ell)
    bricks = enumerate_bricks(bq, {v: 1 for v in bq.vertices})
    tables = brick_tables(bricks.modules)
    best, sets, violations = 0.0, 0, 0
    simples_value = None
    simple_idx = tuple(sorted(i for i, m in enumerate(bricks.modules) if m.total_dim == 1))
    for bs in enumerate_brick_sets(bricks.modules, n, tables):
        sets += 1
        r = spectral_radius(bs.adjacency, 1e-13).value
        best = max(best, r)
        violations += bool(cyclic_block_violations(bs.adjacency))
        if bs.indices == simple_idx:
            simples_value = r
    return best, simples_value is not None and abs(simples_value - 1) <= 1e-12, sets, violations


def suite_tubes() -> SuiteResult:
    res = SuiteResult("cor5.2")
    for n, ell in product((2, 3, 4), repeat=2):
        best, simples_ok, sets, bad = tube_block_check(n, ell)
        res.add(f"tube n={n} l={ell}", abs(best - 1) <= 1e-12 and simples_ok and bad == 0,
                f"best {best!r}, {sets} brick sets, {bad} block violations")
    return res


def suite_tube_witness() -> SuiteResult:
    res = SuiteResult("lemma5.3")
    bq = cyclic_tube(3, 4)
    f = GF(2)
    for i, j in product(bq.vertices, repeat=2):
        if i == j:
            continue
        s1, s2 = simple(bq, i, f), simple(bq, j, f)
        if ext1_dim(s1, s2):
            continue
        m = tube_witness(bq, i, j)
        members = [s1, s2, m]
        orth = all(hom_dim(x, y) == (1 if a == b else 0) for a, x in enumerate(members) for b, y in enumerate(members))
        ok = orth and ext1_dim(s1, m) == 1 and ext1_dim(m, s2) == 1
        res.add(f"witness for (S{i}, S{j})", ok, f"M = {m.dim_vector}")
    try:
        tube_witness(cyclic_tube(4, 2), 1, 4)
        res.add("nilpotency 2 has no witness", False, "a witness was returned")
    except WitnessNotFound:
        res.add("nilpotency 2 has no witness", True)
    return res


def random_factored(rng: np.random.Generator) -> FactoredPoly:
    s = int(rng.integers(1, 4))
    top = int(rng.integers(1, 6))
    roots = sorted(set(int(x) for x in rng.integers(0, top, s - 1)))
    factors = [(Fraction(r), int(rng.integers(1, 3))) for r in roots]
    factors.append((Fraction(top), int(rng.integers(1, 3))))
    return FactoredPoly(tuple(factors))


def suite_root_ordering(instances: int = 200, seed: int = 0) -> SuiteResult:
    res = SuiteResult("lemma6.1")
    root = shifted_root(FactoredPoly.from_roots([0, 2]))
    res.add("root of x(x-2) - 1 is 1+sqrt(2)", abs(root.value - (1 + math.sqrt(2))) <= 1e-10, f"{root.value!r}")
    rng = np.random.default_rng(seed)
    bad_lower = bad_top = 0
    for _ in range(instances):
        f = random_factored(rng)
        m = int(rng.integers(0, int(f.top)))
        if compare_roots(f.times(m), f) != -1:
            bad_lower += 1
        expect = 0 if f.s == 1 else 1
        if compare_roots(f.times(f.top), f) != expect:
            bad_top += 1
    res.add(f"lower factor decreases the root ({instances} instances)", bad_lower == 0, f"{bad_lower} failures")
    res.add(f"top factor raises the root iff s > 1 ({instances} instances)", bad_top == 0, f"{bad_top} failures")
    return res


def _fp(*roots) -> FactoredPoly:
    return FactoredPoly.from_roots(roots)


def suite_orderings() -> SuiteResult:
    res = SuiteResult("ex6.2")
    res.add("x(x-1)(x-2) below x(x-2)", compare_roots(_fp(0, 1, 2), _fp(0, 2)) == -1)
    res.add("x(x-2) below x(x-2)^2", compare_roots(_fp(0, 2), _fp(0, 2, 2)) == -1)
    return res


def suite_mixed() -> SuiteResult:
    res = SuiteResult("ex6.4")
    res.add("(x-2)^2(x-1)x above (x-2)x", compare_roots(_fp(0, 1, 2, 2), _fp(0, 2)) == 1)
    res.add("(x-3)^2(x-1)^2x below (x-3)x", compare_roots(_fp(0, 1, 1, 3, 3), _fp(0, 3)) == -1)
    return res


def suite_canonical_formulas() -> SuiteResult:
    res = SuiteResult("thm6.3")
    for n in range(1, 7):
        c2 = isolated_max_value(n)
        res.add(f"isolated maximum n={n} in [n, n+1)", n <= c2 < n + 1, f"{c2!r}")
        values = [run_max_value(n, s) for s in range(1, 5)]
        res.add(f"run of length s, n={n}, in [n, n+1)", all(n <= v < n + 1 for v in values), f"{values}")
        res.add(f"run of length 1 equals isolated maximum, n={n}", abs(values[0] - c2) <= 1e-10)
        res.add(f"run value strictly increasing in s, n={n}", all(a < b for a, b in zip(values, values[1:])))
    return res


LOOP_CASES = (
    ("A", 2, None, {1: 1, 2: 2}, 2),
    ("A", 2, None, {1: 2}, 2),
    ("A", 2, None, {1: 0, 2: 0}, 2),
    ("D", 4, "subspace", {2: 3}, 1),
    ("D", 4, "subspace", {2: 1}, {1: 1, 2: 2, 3: 1, 4: 1}),
    ("D", 4, "subspace", {1: 1, 2: 2, 3: 1, 4: 2}, 1),
)


def suite_loop_extension() -> SuiteResult:
    res = SuiteResult("thm3.3")
    for kind, n, orient, counts, cap in LOOP_CASES:
        bq = loop_extend(dynkin(kind, n, orient), counts)
        rep = loop_extension_report(bq, cap)
        res.add(f"{kind}{n} loops {counts}", rep.passed, "; ".join(rep.violations) or str(rep.checks))
    return res


def suite_polynomial(seed: int = 0) -> SuiteResult:
    res = SuiteResult("lemma7.x")
    rng = np.random.default_rng(seed)
    for r in (1, 2, 3):
        bad = 0
        for _ in range(100):
            lam = [Fraction(int(x), int(rng.integers(1, 4))) for x in rng.integers(-3, 4, r)]
            mu = list(lam) if rng.random() < 0.3 else [Fraction(int(x), int(rng.integers(1, 4))) for x in rng.integers(-3, 4, r)]
            if poly_ext1(lam, mu, QQ) != (r if lam == mu else 0):
                bad += 1
        res.add(f"one-dimensional Ext closed form, r={r}", bad == 0, f"{bad} mismatches on 100 pairs")
    f = GF(2)
    for r in (1, 2, 3):
        total = bad = 0
        for n in (1, 2):
            for tup in commuting_tuples(f, n, r):
                total += 1
                if not poly_brick_check(tup, f).one_dimensional_iff_brick:
                    bad += 1
        res.add(f"brick iff one-dimensional, r={r}, dim <= 2 over F2", bad == 0, f"{total} tuples, {bad} violations")
    for r in (1, 2, 3):
        rep = polynomial_fpdim_report(r, f)
        res.add(f"points of F2^{r} give radius {r}", rep.best == r and rep.self_ext == r,
                f"{rep.points} points, radius {rep.best}")
    return res


def oracle_corpus() -> list[tuple[str, list[Representation]]]:
    out = []
    a2 = dynkin("A", 2)
    out.append(("A2 cap 2", list(enumerate_modules(a2, 2).modules)))
    d4 = dynkin("D", 4, "subspace")
    out.append(("D4 cap 1", list(enumerate_modules(d4, 1).modules)))
    for n, ell in ((2, 2), (3, 3), (2, 4)):
        out.append((f"tube {n},{ell}", list(enumerate_modules(cyclic_tube(n, ell), 1).modules)))
    out.append(("A2 loops {1:1,2:2}", list(enumerate_modules(loop_extend(a2, {1: 1, 2: 2}), 1).modules)))
    out.append(("four-vertex", list(enumerate_modules(example_four_vertex(), 1).modules)))
    return out


def suite_oracle() -> SuiteResult:
    res = SuiteResult("oracle")
    total = 0
    for name, mods in oracle_corpus():
        bad = 0
        for m in mods:
            pres = syzygy(m)
            for n in mods:
                total += 1
                if ext1_from_presentation(pres, n) != ext1_cocycle_dim(m, n):
                    bad += 1
        res.add(f"{name}: presentation and cocycle Ext agree", bad == 0, f"{len(mods) ** 2} pairs, {bad} mismatches")
    res.add("at least 500 pairs", total >= 500, f"{total} pairs")
    return res


def random_representation(bq: BoundQuiver, field: Field, rng: np.random.Generator, max_dim: int = 2) -> Representation:
    """Uniform random matrices on random dimensions; relations are not imposed."""
    dims = {v: int(rng.integers(0, max_dim + 1)) for v in bq.vertices}
    p = field.size
    maps = {a.name: field.array(rng.integers(0, p, (dims[a.target], dims[a.source])))
            for a in bq.arrows}
    return Representation(bq, field, dims, maps)


def suite_euler(pairs: int = 50, seed: int = 0) -> SuiteResult:
    res = SuiteResult("euler")
    rng = np.random.default_rng(seed)
    f = GF(101)
    for name, bq in (("A3", dynkin("A", 3)), ("D4", dynkin("D", 4))):
        bad = 0
        for _ in range(pairs):
            m, n = random_representation(bq, f, rng), random_representation(bq, f, rng)
            if hom_dim(m, n) - ext1_dim(m, n) != euler_form(bq, m.dims, n.dims):
                bad += 1
        res.add(f"{name}: dim Hom - dim Ext equals the Euler form", bad == 0, f"{pairs} pairs, {bad} mismatches")
    return res


SUITES: dict[str, Callable[[], SuiteResult]] = {
    "thm4.1": suite_loop_max,
    "ex4.3": suite_four_vertex,
    "cor5.2": suite_tubes,
    "lemma5.3": suite_tube_witness,
    "lemma6.1": suite_root_ordering,
    "ex6.2": suite_orderings,
    "ex6.4": suite_mixed,
    "thm6.3": suite_canonical_formulas,
    "thm3.3": suite_loop_extension,
    "lemma7.x": suite_polynomial,
    "oracle": suite_oracle,
    "euler": suite_euler,
}


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t = time.perf_counter()
    res = SUITES[name]()
    res.seconds = time.perf_counter() - t
    return res
