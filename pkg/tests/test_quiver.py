import pytest
from hypothesis import given, settings, strategies as st

from fpquiver.builders import SINK, SOURCE, arm_vertex, canonical, cyclic_tube, dynkin, example_four_vertex
from fpquiver.quiver import (
    BoundQuiver, Path, Quiver, QuiverError, Relation, check_admissible, check_loop_commutativity, loop_extend,
    loop_reduce, path_basis, paths_by_length,
)


def one_loop(relations=True):
    q = Quiver.build([1], [("g", 1, 1)])
    rels = (Relation.monomial(Path.of(q, ["g", "g"])),) if relations else ()
    return BoundQuiver(q, rels)


def test_admissible_a2():
    rep = check_admissible(dynkin("A", 2), 4)
    assert rep.admissible and rep.nilpotency_bound == 2 and rep.algebra_dim == 3


def test_admissible_dual_numbers():
    rep = check_admissible(one_loop(), 4)
    assert rep.admissible and rep.nilpotency_bound == 2 and rep.algebra_dim == 2


def test_free_loop_not_admissible():
    rep = check_admissible(one_loop(False), 10)
    assert not rep.admissible
    assert rep.witness.arrows == ("g",) * 10


def test_length_one_relation_rejected():
    q = Quiver.build([1, 2], [("a", 2, 1), ("b", 2, 1)])
    bq = BoundQuiver(q, (Relation(((1, Path.of(q, ["a"])), (-1, Path.of(q, ["b"])))),))
    assert not check_admissible(bq).admissible


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver.build([1], [("a", 1, 2)])
    with pytest.raises(QuiverError):
        Quiver.build([1, 2], [("a", 2, 1), ("a", 2, 1)])
    with pytest.raises(QuiverError):
        Path.of(Quiver.build([1, 2, 3], [("a", 2, 1), ("b", 3, 2)]), ["b", "a"])


def test_connectivity_is_checked():
    assert dynkin("D", 4).quiver.is_connected()
    assert not Quiver.build([1, 2], []).is_connected()


def test_loop_commutativity_of_extension():
    assert check_loop_commutativity(loop_extend(dynkin("A", 2), {2: 2}))[0]


def test_loop_commutativity_violation():
    q = Quiver.build([1, 2], [("g", 1, 1), ("a", 2, 1)])
    rels = [Relation.monomial(Path.of(q, ["g", "g"]))]
    rels += [Relation.monomial(p) for p in paths_by_length(q, 3)[3]]
    ok, bad = check_loop_commutativity(BoundQuiver(q, tuple(rels)))
    assert not ok and "g*a" in bad


def test_loop_free_commutativity_vacuous():
    assert check_loop_commutativity(dynkin("A", 3)) == (True, [])


def test_loop_extend_a2():
    bq = loop_extend(dynkin("A", 2), {2: 2})
    assert {a.name for a in bq.arrows} == {"a1", "l2_1", "l2_2"}
    assert bq.loop_counts() == {1: 0, 2: 2}
    assert check_admissible(bq).admissible


def test_loop_extend_zero_counts_identity():
    a2 = dynkin("A", 2)
    assert loop_extend(a2, {1: 0, 2: 0}) == a2


def test_loop_extend_rejects_loops():
    with pytest.raises(QuiverError):
        loop_extend(one_loop(), {1: 1})


def test_loop_reduce_four_vertex():
    base = example_four_vertex()
    assert loop_reduce(loop_extend(base, {1: 1, 2: 2, 3: 0, 4: 3})) == base
    assert loop_reduce(base) == base


def test_loop_reduce_needs_commutativity():
    q = Quiver.build([1, 2], [("g", 1, 1), ("a", 2, 1)])
    rels = (Relation.monomial(Path.of(q, ["g", "g"])),) + tuple(Relation.monomial(p) for p in paths_by_length(q, 3)[3])
    with pytest.raises(QuiverError):
        loop_reduce(BoundQuiver(q, rels))


def test_canonical_a11():
    bq = canonical("A", 1, 1)
    assert set(bq.vertices) == {SINK, SOURCE}
    assert sorted((a.source, a.target) for a in bq.arrows) == [(SOURCE, SINK)] * 2
    assert bq.relations == ()
    assert path_basis(bq).dim == 4


def test_canonical_d4_relation():
    bq = canonical("D", 4)
    (rel,) = bq.relations
    assert str(rel) == "a1*a2 + b1*b2 + c1*c2"
    assert set(bq.vertices) == {SINK, SOURCE, arm_vertex(1, 1), arm_vertex(2, 1), arm_vertex(3, 1)}
    assert check_admissible(bq).admissible


def test_canonical_e6_relation():
    (rel,) = canonical("E", 6).relations
    assert str(rel) == "a1*a2*a3 + b1*b2 + c1*c2*c3"


def test_builder_ranges():
    for bad in (lambda: canonical("A", 0, 1), lambda: canonical("D", 3), lambda: canonical("E", 9),
                lambda: cyclic_tube(2, 1), lambda: dynkin("E", 5), lambda: dynkin("A", 3, "<<<")):
        with pytest.raises(QuiverError):
            bad()


def test_cyclic_tube_relations():
    bq = cyclic_tube(3, 2)
    assert len(bq.relations) == 3
    assert all(len(r.terms) == 1 and len(r.terms[0][1]) == 2 for r in bq.relations)
    assert check_admissible(bq).nilpotency_bound == 2


def test_path_basis_examples():
    pb = path_basis(dynkin("A", 2))
    assert pb.dim == 3 and [str(p) for p in pb.paths(2, 1)] == ["a1"]
    pb = path_basis(one_loop())
    assert [str(p) for p in pb.paths(1, 1)] == ["e1", "g"]


def test_path_basis_commutator():
    bq = loop_extend(dynkin("A", 1), {1: 2})
    pb = path_basis(bq)
    # span{e, g1, g2, g1 g2}: g1 g2 = g2 g1 and squares vanish
    assert pb.dim == 4
    assert (pb.reduce(Path.of(bq.quiver, ["l1_1", "l1_2"])) == pb.reduce(Path.of(bq.quiver, ["l1_2", "l1_1"]))).all()


counts_st = st.dictionaries(st.integers(1, 4), st.integers(0, 2), max_size=4)
bases = [dynkin("A", 2), dynkin("A", 3, "<>"), dynkin("D", 4, "subspace"), example_four_vertex(), cyclic_tube(2, 2)]


@settings(max_examples=30, deadline=None)
@given(base=st.sampled_from(bases), counts=counts_st, d=st.integers(2, 3))
def test_reduce_inverts_extend(base, counts, d):
    counts = {v: c for v, c in counts.items() if v in base.vertices}
    ext = loop_extend(base, counts, d)
    assert check_loop_commutativity(ext)[0]
    assert loop_reduce(ext) == base


@settings(max_examples=20, deadline=None)
@given(base=st.sampled_from(bases), counts=counts_st)
def test_basis_products_close(base, counts):
    bq = loop_extend(base, {v: c for v, c in counts.items() if v in base.vertices})
    pb = path_basis(bq)
    assert pb.dim == sum(len(pb.paths(i, j)) for i in bq.vertices for j in bq.vertices)
    for (i, j), left in pb.basis.items():
        for (k, l), right in pb.basis.items():
            if l != i:
                continue
            for p in left:
                for q in right:
                    v = pb.multiply(p, q)
                    assert v.shape == (len(pb.paths(k, j)),)


@pytest.mark.parametrize("bq", [dynkin("A", 4), dynkin("D", 5, "subspace"), dynkin("E", 6), canonical("A", 2, 3)])
def test_hereditary_dim_counts_paths(bq):
    rep = check_admissible(bq)
    n_paths = sum(len(level) for level in paths_by_length(bq.quiver, rep.nilpotency_bound))
    assert path_basis(bq).dim == n_paths
