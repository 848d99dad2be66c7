"""JSON reports with self-checking certificates.

Matrices are stored as lists of decimal strings so rationals stay exact.  A
certificate carries the bound quiver as DSL text, the field, the bricks and
the claimed adjacency matrix and radius; :func:`verify_certificate` rebuilds
everything from the document alone.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Any, Optional, Union

import numpy as np

from .bricks import FpEstimate, LoopReport, ModuleList
from .dsl import QuiverFile, dump, parse
from .ext import ext1_dim
from .linalg import Field, from_strings, parse_field, to_strings
from .quiver import BoundQuiver
from .representation import Representation, are_isomorphic, check_representation, hom_dim, is_brick
from .spectral import spectral_radius

SCHEMA = "fpquiver.report/1"


class CertificateError(ValueError):
    pass


def field_name(field: Field) -> str:
    return "Q" if field.size is None else str(field.size)


def quiver_text(q: Union[QuiverFile, BoundQuiver]) -> str:
    return dump(q if isinstance(q, QuiverFile) else QuiverFile(q))


def rep_to_json(m: Representation) -> dict:
    return {
        "dims": [m.dims[v] for v in m.bq.vertices],
        "maps": {a.name: to_strings(m.field, m.maps[a.name]) for a in m.bq.arrows},
    }


def rep_from_json(doc: dict, bq: BoundQuiver, field: Field) -> Representation:
    dims = doc["dims"]
    if len(dims) != len(bq.vertices):
        raise CertificateError(f"dimension vector {dims} does not match {len(bq.vertices)} vertices")
    dims = dict(zip(bq.vertices, (int(d) for d in dims)))
    maps = {}
    for a in bq.arrows:
        rows = doc["maps"].get(a.name, [])
        maps[a.name] = from_strings(field, rows, (dims[a.target], dims[a.source]))
    return Representation(bq, field, dims, maps)


def _matrix(a) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(a)]


def document(command: str, inputs: dict, results: dict, certificate: Optional[dict] = None) -> dict:
    doc = {"schema": SCHEMA, "command": command, "inputs": inputs, "results": results}
    if certificate is not None:
        doc["certificate"] = certificate
    return doc


def bricks_report(q: Union[QuiverFile, BoundQuiver], bricks: ModuleList, inputs: dict) -> dict:
    certificate = {
        "kind": "bricks",
        "quiver": quiver_text(q),
        "field": field_name(bricks.field),
        "bricks": [rep_to_json(m) for m in bricks.modules],
        "exhaustive": bricks.exhaustive,
    }
    results = {
        "count": len(bricks),
        "dimension_vectors": [list(m.dim_vector) for m in bricks.modules],
        "exhaustive": bricks.exhaustive,
        "skipped": [list(s) for s in bricks.skipped],
        "loops_forced_zero": bricks.loops_forced_zero,
    }
    return document("bricks", inputs, results, certificate)


def fpdim_report(q: Union[QuiverFile, BoundQuiver], est: FpEstimate, inputs: dict) -> dict:
    w = est.witness
    members = list(w.members) if w else []
    adjacency = _matrix(w.adjacency) if w else []
    pred = est.prediction
    results = {
        "best": est.best,
        "method": est.method,
        "bricks_found": len(est.bricks),
        "brick_sets_examined": est.sets_examined,
        "max_set_size": est.max_size,
        "exhaustive": est.exhaustive,
        "witness_dimension_vectors": [list(m.dim_vector) for m in members],
        "adjacency": adjacency,
        "prediction": None if pred is None else {
            "value": pred.value, "interval": list(pred.interval) if pred.interval else None, "rule": pred.rule},
    }
    certificate = {
        "kind": "brick_set",
        "quiver": quiver_text(q),
        "field": field_name(est.bricks.field),
        "bricks": [rep_to_json(m) for m in members],
        "adjacency": adjacency,
        "rho": est.best,
        "method": est.method,
        "exhaustive": est.exhaustive,
    }
    return document("fpdim", inputs, results, certificate)


def loop_report(q: Union[QuiverFile, BoundQuiver], rep: LoopReport, inputs: dict) -> dict:
    results = {
        "passed": rep.passed,
        "checks": dict(rep.checks),
        "violations": list(rep.violations),
        "bricks_loop_extended": len(rep.bricks_a),
        "bricks_reduced": len(rep.bricks_b),
        "modules_reduced": len(rep.modules_b),
        "self_ext": {str(v): {"ext": e, "loops": n} for v, (e, n) in sorted(rep.self_ext.items())},
        "exhaustive": rep.bricks_a.exhaustive and rep.bricks_b.exhaustive and rep.modules_b.exhaustive,
    }
    return document("loopcheck", inputs, results)


def verify_certificate(doc: dict, tol: float = 1e-9) -> list[str]:
    """Recompute every claim in ``doc["certificate"]``; return the disagreements."""
    if doc.get("schema") != SCHEMA:
        return [f"unknown schema {doc.get('schema')!r}"]
    cert = doc.get("certificate")
    if cert is None:
        return ["document has no certificate"]
    problems: list[str] = []
    bq = parse(cert["quiver"]).bound_quiver
    field = parse_field(cert["field"])
    reps = [rep_from_json(b, bq, field) for b in cert["bricks"]]
    for i, m in enumerate(reps):
        ok, rel = check_representation(m)
        if not ok:
            problems.append(f"brick {i} violates relation {rel}")
        elif not is_brick(m):
            problems.append(f"module {i} is not a brick")
    if cert["kind"] == "bricks":
        for i, m in enumerate(reps):
            for j in range(i):
                if are_isomorphic(reps[j], m):
                    problems.append(f"bricks {j} and {i} are isomorphic")
        return problems
    if cert["kind"] != "brick_set":
        return problems + [f"unknown certificate kind {cert['kind']!r}"]
    for i, m in enumerate(reps):
        for j, n in enumerate(reps):
            if i != j and hom_dim(m, n):
                problems.append(f"Hom({i}, {j}) is nonzero")
    adjacency = [[ext1_dim(m, n) for n in reps] for m in reps]
    if adjacency != cert["adjacency"]:
        problems.append(f"adjacency {cert['adjacency']} recomputes to {adjacency}")
    rho = spectral_radius(np.array(adjacency, dtype=np.int64).reshape(len(reps), len(reps)), tol).value
    if abs(rho - cert["rho"]) > 2 * tol:
        problems.append(f"rho {cert['rho']} recomputes to {rho}")
    return problems


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write(doc: dict, path: Optional[str]) -> None:
    """Write to ``path`` atomically, or to stdout when ``path`` is None."""
    text = dumps(doc)
    if path is None:
        print(text, end="")
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read(path: str) -> dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
