"""Estimator-style wrapper around the brick-set search."""

from __future__ import annotations

from typing import Optional

from sklearn.base import BaseEstimator

from .bricks import DEFAULT_BUDGET, FpEstimate, fpdim_search
from .linalg import Field, parse_field
from .quiver import BoundQuiver, check_admissible


def check_bound_quiver(bq) -> BoundQuiver:
    """Validate the input of :meth:`FPDimEstimator.fit`."""
    if not isinstance(bq, BoundQuiver):
        raise TypeError(f"expected a BoundQuiver, got {type(bq).__name__}")
    report = check_admissible(bq)
    if not report.admissible:
        raise ValueError(f"bound quiver is not admissible: {report.reason}")
    return bq


class FPDimEstimator(BaseEstimator):
    """Certified lower bound for the Frobenius-Perron dimension of ``mod kQ/I``.

    After :meth:`fit`, ``fpdim_`` holds the best spectral radius found,
    ``witness_`` the brick set attaining it, and ``result_`` the full search
    record.
    """

    def __init__(self, cap=1, max_size: int = 3, field: str = "2", tol: float = 1e-9,
                 budget: int = DEFAULT_BUDGET):
        self.cap = cap
        self.max_size = max_size
        self.field = field
        self.tol = tol
        self.budget = budget

    def _field(self) -> Field:
        return self.field if isinstance(self.field, Field) else parse_field(str(self.field))

    def fit(self, bq: BoundQuiver, y: Optional[object] = None) -> "FPDimEstimator":
        bq = check_bound_quiver(bq)
        result: FpEstimate = fpdim_search(bq, self.cap, self.max_size, self._field(), self.tol, self.budget)
        self.result_ = result
        self.fpdim_ = result.best
        self.witness_ = result.witness
        self.exhaustive_ = result.exhaustive
        self.prediction_ = result.prediction
        return self
