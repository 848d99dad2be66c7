"""Line-oriented text format for bound quivers.

    # comment
    vertices 1 2 3 4
    arrow a 2 1              # SRC == DST declares a loop
    rel a*b                  # rightmost arrow applies first
    rel 2*a*b - c*d
    loops 2 2                # add two loops at vertex 2 (with the loop relations)
    nilpotency 2             # loop nilpotency used by `loops`
    field p 2                # or: field Q
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .builders import recognize
from .linalg import GF, QQ, Field
from .quiver import BoundQuiver, Path, Quiver, QuiverError, Relation, loop_extend


class DSLError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class QuiverFile:
    base: BoundQuiver
    loops: tuple[tuple[int, int], ...] = ()
    nilpotency: int = 2
    field: Optional[Field] = dc_field(default=None)

    @property
    def bound_quiver(self) -> BoundQuiver:
        if any(c for _, c in self.loops):
            return loop_extend(self.base, dict(self.loops), self.nilpotency)
        return self.base


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[*+-]))")


def _tokens(text: str, offset: int, lineno: int) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = offset + pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise DSLError(f"unexpected character {text[pos:].lstrip()[:1]!r}", lineno, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    return out


def _parse_relation(quiver: Quiver, text: str, offset: int, lineno: int) -> Relation:
    toks = _tokens(text, offset, lineno)
    if not toks:
        raise DSLError("empty relation", lineno, offset + 1)
    terms = []
    i = 0
    sign = 1
    if toks[0][0] == "op" and toks[0][1] == "-":
        sign, i = -1, 1
    while True:
        coeff = 1
        if i < len(toks) and toks[i][0] == "int":
            if i + 1 >= len(toks) or toks[i + 1][1] != "*":
                raise DSLError("coefficient must be followed by '*'", lineno, toks[i][2])
            coeff = int(toks[i][1])
            i += 2
        names, col = [], toks[i][2] if i < len(toks) else offset + len(text) + 1
        while i < len(toks) and toks[i][0] == "name":
            names.append((toks[i][1], toks[i][2]))
            if i + 1 < len(toks) and toks[i + 1][1] == "*":
                i += 2
            else:
                i += 1
                break
        if not names:
            raise DSLError("expected a path", lineno, col)
        for n, c in names:
            if n not in quiver.arrow_map:
                raise DSLError(f"unknown arrow {n!r}", lineno, c)
        if len(names) < 2:
            raise DSLError("relation terms must have length at least 2 (admissibility)", lineno, col)
        try:
            path = Path.of(quiver, [n for n, _ in names])
        except QuiverError as e:
            raise DSLError(str(e), lineno, col) from None
        terms.append((sign * coeff, path))
        if i >= len(toks):
            break
        kind, val, c = toks[i]
        if kind != "op" or val not in "+-":
            raise DSLError(f"expected '+' or '-', got {val!r}", lineno, c)
        sign = 1 if val == "+" else -1
        i += 1
        if i >= len(toks):
            raise DSLError("dangling operator", lineno, c)
    try:
        return Relation(tuple(terms))
    except QuiverError as e:
        raise DSLError(str(e), lineno, offset + 1) from None


def _int(word: str, lineno: int, col: int, what: str) -> int:
    try:
        return int(word)
    except ValueError:
        raise DSLError(f"{what} must be an integer, got {word!r}", lineno, col) from None


def _words(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse(text: str) -> QuiverFile:
    vertices: list[int] = []
    arrows: list[tuple[str, int, int]] = []
    rel_lines: list[tuple[int, str, int]] = []
    loops: dict[int, int] = {}
    loop_pos: dict[int, tuple[int, int]] = {}
    nilpotency = 2
    fld: Optional[Field] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        words = _words(line)
        if not words:
            continue
        key, kcol = words[0]
        args = words[1:]
        if key == "vertices":
            if vertices:
                raise DSLError("vertices declared twice", lineno, kcol)
            for w, c in args:
                v = _int(w, lineno, c, "vertex")
                if v in vertices:
                    raise DSLError(f"duplicate vertex {v}", lineno, c)
                vertices.append(v)
        elif key == "arrow":
            if len(args) != 3:
                raise DSLError("usage: arrow NAME SRC DST", lineno, kcol)
            (name, ncol), (s, scol), (t, tcol) = args
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
                raise DSLError(f"bad arrow name {name!r}", lineno, ncol)
            if any(a[0] == name for a in arrows):
                raise DSLError(f"duplicate arrow {name!r}", lineno, ncol)
            src, dst = _int(s, lineno, scol, "source"), _int(t, lineno, tcol, "target")
            for v, c in ((src, scol), (dst, tcol)):
                if v not in vertices:
                    raise DSLError(f"unknown vertex {v}", lineno, c)
            arrows.append((name, src, dst))
        elif key == "rel":
            if not args:
                raise DSLError("empty relation", lineno, kcol)
            start = args[0][1] - 1
            rel_lines.append((lineno, line[start:], start))
        elif key == "loops":
            if len(args) != 2:
                raise DSLError("usage: loops VERTEX COUNT", lineno, kcol)
            v = _int(args[0][0], lineno, args[0][1], "vertex")
            if v not in vertices:
                raise DSLError(f"unknown vertex {v}", lineno, args[0][1])
            count = _int(args[1][0], lineno, args[1][1], "loop count")
            loops[v] = loops.get(v, 0) + count
            loop_pos.setdefault(v, (lineno, kcol))
        elif key == "nilpotency":
            if len(args) != 1:
                raise DSLError("usage: nilpotency INTEGER", lineno, kcol)
            nilpotency = _int(args[0][0], lineno, args[0][1], "nilpotency")
            if nilpotency < 2:
                raise DSLError("nilpotency must be at least 2", lineno, args[0][1])
        elif key == "field":
            if len(args) == 1 and args[0][0].upper() == "Q":
                fld = QQ
            elif len(args) == 2 and args[0][0] == "p":
                try:
                    fld = GF(_int(args[1][0], lineno, args[1][1], "characteristic"))
                except ValueError as e:
                    if isinstance(e, DSLError):
                        raise
                    raise DSLError(str(e), lineno, args[1][1]) from None
            else:
                raise DSLError("usage: field p INTEGER | field Q", lineno, kcol)
        else:
            raise DSLError(f"unknown keyword {key!r}", lineno, kcol)
    if not vertices:
        raise DSLError("no vertices declared", 1, 1)
    quiver = Quiver.build(vertices, arrows)
    rels = tuple(_parse_relation(quiver, body, start, lineno) for lineno, body, start in rel_lines)
    if loops and quiver.loops():
        lineno, col = next(iter(loop_pos.values()))
        raise DSLError("'loops' cannot be combined with explicitly declared loops", lineno, col)
    base = BoundQuiver(quiver, rels)
    base = BoundQuiver(quiver, rels, recognize(base))
    return QuiverFile(base, tuple(sorted(loops.items())), nilpotency, fld)


def dump(qf: QuiverFile) -> str:
    """Text form of ``qf``; ``parse(dump(qf))`` reproduces it."""
    q = qf.base.quiver
    lines = ["vertices " + " ".join(str(v) for v in q.vertices)]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in q.arrows]
    lines += [f"rel {r}" for r in qf.base.relations]
    lines += [f"loops {v} {c}" for v, c in qf.loops]
    if qf.loops and qf.nilpotency != 2:
        lines.append(f"nilpotency {qf.nilpotency}")
    if qf.field is not None:
        lines.append("field Q" if qf.field.size is None else f"field p {qf.field.size}")
    return "\n".join(lines) + "\n"


def load(path) -> QuiverFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
