import math

import pytest
from sklearn.base import clone

from fpquiver.builders import dynkin, example_four_vertex
from fpquiver.estimator import FPDimEstimator
from fpquiver.quiver import BoundQuiver, Quiver, loop_extend


def test_params_round_trip():
    est = FPDimEstimator(cap=2, max_size=2, field="3")
    assert est.get_params()["cap"] == 2
    again = clone(est)
    assert again.get_params() == est.get_params()
    assert not hasattr(again, "fpdim_")


def test_fit():
    est = FPDimEstimator(cap=2).fit(loop_extend(example_four_vertex(), {2: 2}))
    assert abs(est.fpdim_ - (1 + math.sqrt(2))) < 1e-9
    assert est.exhaustive_ and len(est.witness_.indices) == 2
    assert abs(est.prediction_.value - est.fpdim_) < 1e-9


def test_fit_validates_input():
    with pytest.raises(TypeError):
        FPDimEstimator().fit("not a quiver")
    free = BoundQuiver(Quiver.build([1], [("g", 1, 1)]), ())
    with pytest.raises(ValueError):
        FPDimEstimator().fit(free)


def test_set_params():
    est = FPDimEstimator().set_params(max_size=1)
    assert est.fit(loop_extend(dynkin("A", 2), {1: 3})).fpdim_ == 3
