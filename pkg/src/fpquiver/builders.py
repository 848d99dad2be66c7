"""Built-in bound quivers: Dynkin quivers, canonical algebras, nilpotent cyclic quivers.

Vertex encoding for canonical algebras: the sink ``0`` is ``0``, the source
``0'`` is ``1``, and the arm vertex ``(i, j)`` is ``100 * i + j``.  Arrows on
arm ``i`` are named ``a1.. / b1.. / c1..`` counted from the sink, so the arm
path from ``0'`` to ``0`` reads ``a1*a2*...*ak`` in written order.
"""

from __future__ import annotations

from typing import Optional

from .quiver import BoundQuiver, Path, Quiver, QuiverError, Relation

SINK = 0
SOURCE = 1


def arm_vertex(i: int, j: int) -> int:
    return 100 * i + j


def vertex_label(v: int) -> str:
    """Human-readable label for the canonical-algebra encoding."""
    if v == SINK:
        return "0"
    if v == SOURCE:
        return "0'"
    return f"({v // 100},{v % 100})"


def _edges(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "A":
        if n < 1:
            raise QuiverError("A_n needs n >= 1")
        return [(i, i + 1) for i in range(1, n)]
    if kind == "D":
        if n < 4:
            raise QuiverError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    if kind == "E":
        if n not in (6, 7, 8):
            raise QuiverError("E_n needs n in {6, 7, 8}")
        return [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
    raise QuiverError(f"unknown Dynkin type {kind!r}")


def dynkin(kind: str, n: int, orientation: Optional[str] = None) -> BoundQuiver:
    """Dynkin quiver of type ``A_n``, ``D_n`` or ``E_n`` without relations.

    Edges are listed as ``(i, i+1)`` along the long chain followed by the
    branch edges.  ``orientation`` has one character per edge: ``'<'`` points
    the arrow at the smaller vertex, ``'>'`` at the larger.  The default is
    all ``'<'``.  ``"subspace"`` (types D and E) points every arrow towards
    the branch vertex.
    """
    kind = kind.upper()
    edges = _edges(kind, n)
    if orientation is None:
        orientation = "<" * len(edges)
    elif orientation == "subspace":
        if kind == "A":
            raise QuiverError("subspace orientation needs a branch vertex")
        branch = n - 2 if kind == "D" else 3
        orientation = "".join(">" if j <= branch else "<" for _, j in edges)
    if len(orientation) != len(edges) or set(orientation) - {"<", ">"}:
        raise QuiverError(f"orientation needs {len(edges)} characters from '<>'")
    arrows = []
    for k, ((i, j), o) in enumerate(zip(edges, orientation), start=1):
        arrows.append((f"a{k}", j, i) if o == "<" else (f"a{k}", i, j))
    q = Quiver.build(range(1, n + 1), arrows)
    return BoundQuiver(q, (), ("dynkin", kind, n, orientation))


def _arm(q_arrows: list, prefix: str, arm: int, length: int) -> list[int]:
    """Add an arm of ``length`` arrows from 0' to 0; return its inner vertices."""
    inner = [arm_vertex(arm, j) for j in range(1, length)]
    chain = [SINK] + inner + [SOURCE]
    for k in range(1, length + 1):
        q_arrows.append((f"{prefix}{k}", chain[k], chain[k - 1]))
    return inner


def canonical(kind: str, *params: int) -> BoundQuiver:
    """Canonical algebras ``A(n, m)``, ``D_I(n)`` and ``E_I(n)``.

    ``A(n, m)`` has arms with ``n`` and ``m`` arrows and no relation.
    ``D_I(n)`` has arms of ``n-2, 2, 2`` arrows and ``E_I(n)`` arms of
    ``n-3, 2, 3`` arrows, each with the single relation summing the three
    arm paths.
    """
    kind = kind.upper()
    arrows: list = []
    vertices = [SINK, SOURCE]
    if kind == "A":
        if len(params) != 2 or min(params) < 1:
            raise QuiverError("canonical A needs n, m >= 1")
        n, m = params
        vertices += _arm(arrows, "a", 1, n) + _arm(arrows, "b", 2, m)
        q = Quiver.build(vertices, arrows)
        return BoundQuiver(q, (), ("canonical", "A", (n, m)))
    if kind == "D":
        if len(params) != 1 or params[0] < 4:
            raise QuiverError("canonical D needs n >= 4")
        (n,) = params
        lengths = (n - 2, 2, 2)
    elif kind == "E":
        if len(params) != 1 or params[0] not in (6, 7, 8):
            raise QuiverError("canonical E needs n in {6, 7, 8}")
        (n,) = params
        lengths = (n - 3, 2, 3)
    else:
        raise QuiverError(f"unknown canonical type {kind!r}")
    for arm, (prefix, length) in enumerate(zip("abc", lengths), start=1):
        vertices += _arm(arrows, prefix, arm, length)
    q = Quiver.build(vertices, arrows)
    terms = tuple((1, Path.of(q, [f"{prefix}{k}" for k in range(1, length + 1)]))
                  for prefix, length in zip("abc", lengths))
    return BoundQuiver(q, (Relation(terms),), ("canonical", kind, (n,)))


def cyclic_tube(n: int, nilpotency: int) -> BoundQuiver:
    """Cyclic quiver ``1 -> 2 -> ... -> n -> 1`` modulo all paths of length ``nilpotency``."""
    if n < 1 or nilpotency < 2:
        raise QuiverError("cyclic_tube needs n >= 1 and nilpotency >= 2")
    arrows = [(f"t{i}", i, i % n + 1) for i in range(1, n + 1)]
    q = Quiver.build(range(1, n + 1), arrows)
    rels = []
    for start in range(1, n + 1):
        names = []
        v = start
        for _ in range(nilpotency):
            names.insert(0, f"t{v}")
            v = v % n + 1
        rels.append(Relation.monomial(Path.of(q, names)))
    return BoundQuiver(q, tuple(rels), ("tube", n, nilpotency))


def example_four_vertex() -> BoundQuiver:
    """Four-vertex quiver ``a: 2->1, g: 3->1, b: 4->2, d: 4->3`` with relation ``a*b``."""
    q = Quiver.build([1, 2, 3, 4], [("a", 2, 1), ("g", 3, 1), ("b", 4, 2), ("d", 4, 3)])
    return BoundQuiver(q, (Relation.monomial(Path.of(q, ["a", "b"])),), ("four_vertex",))


def _dynkin_type(q: Quiver) -> Optional[tuple[str, int]]:
    n = len(q.vertices)
    if len(q.arrows) != n - 1 or not q.is_connected():
        return None
    adj: dict[int, list[int]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.source].append(a.target)
        adj[a.target].append(a.source)
    branch = [v for v, nb in adj.items() if len(nb) > 2]
    if not branch:
        return ("A", n)
    if len(branch) > 1 or len(adj[branch[0]]) != 3:
        return None
    arms = []
    for start in adj[branch[0]]:
        prev, cur, length = branch[0], start, 1
        while len(adj[cur]) == 2:
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n)
    return None


def _tube_params(bq: BoundQuiver) -> Optional[tuple[int, int]]:
    q = bq.quiver
    n = len(q.vertices)
    if len(q.arrows) != n or not q.is_connected():
        return None
    if sorted(a.source for a in q.arrows) != sorted(q.vertices) or sorted(a.target for a in q.arrows) != sorted(q.vertices):
        return None
    if not bq.relations or any(len(r.terms) != 1 for r in bq.relations):
        return None
    lengths = {len(r.terms[0][1].arrows) for r in bq.relations}
    if len(lengths) != 1 or len(bq.relations) != n:
        return None
    (ell,) = lengths
    if len({r.terms[0][1].source for r in bq.relations}) != n:
        return None
    return n, ell


def recognize(bq: BoundQuiver) -> tuple:
    """Builder provenance for a bound quiver given only by its presentation.

    Recognises the four-vertex example, relation-free Dynkin trees and
    nilpotent cyclic quivers; returns ``()`` otherwise.
    """
    q = bq.quiver
    if q.loops():
        return ()
    if bq == example_four_vertex():
        return ("four_vertex",)
    if not bq.relations:
        kind = _dynkin_type(q)
        if kind:
            return ("dynkin", kind[0], kind[1], None)
    tube = _tube_params(bq)
    if tube:
        return ("tube",) + tube
    return ()
