import pytest
from hypothesis import given, settings, strategies as st

from fpquiver.builders import canonical, cyclic_tube, dynkin, example_four_vertex
from fpquiver.dsl import DSLError, QuiverFile, dump, load, parse
from fpquiver.linalg import GF, QQ
from fpquiver.quiver import check_admissible, loop_extend

FOUR_VERTEX = """\
# four vertices with a zero relation
vertices 1 2 3 4
arrow a 2 1
arrow g 3 1
arrow b 4 2
arrow d 4 3
rel a*b
loops 2 2
"""


def test_four_vertex_file():
    qf = parse(FOUR_VERTEX)
    assert qf.bound_quiver == loop_extend(example_four_vertex(), {2: 2})
    assert qf.bound_quiver.origin[1] == ("four_vertex",)


def test_dual_numbers():
    bq = parse("vertices 1\narrow a 1 1\nrel a*a\n").bound_quiver
    rep = check_admissible(bq)
    assert rep.admissible and rep.algebra_dim == 2


def test_coefficients_and_signs():
    qf = parse("vertices 1 2 3\narrow a 2 1\narrow b 3 2\narrow c 2 1\narrow d 3 2\nrel -2*a*b + c*d - 3*a*d\n")
    (rel,) = qf.base.relations
    assert [c for c, _ in rel.terms] == [-2, 1, -3]
    assert str(rel) == "-2*a*b + c*d - 3*a*d"


def test_field_and_nilpotency():
    qf = parse("vertices 1\nfield p 5\nnilpotency 3\nloops 1 1\n")
    assert qf.field == GF(5) and qf.nilpotency == 3
    assert parse("vertices 1\nfield Q\n").field is QQ


@pytest.mark.parametrize("text, line, column, fragment", [
    ("vertices 1 2\narrow a 2 1\nrel a\n", 3, 5, "length at least 2"),
    ("vertices 1 2\narrow a 2 1\narrow a 2 1\n", 3, 7, "duplicate arrow"),
    ("vertices 1 2\narrow a 2 1\nrel a*x\n", 3, 7, "unknown arrow"),
    ("vertices 1 2\narrow a 2 3\n", 2, 11, "unknown vertex"),
    ("vertices 1 2 3\narrow a 2 1\narrow b 3 2\nrel b*a\n", 4, 5, "not composable"),
    ("vertices 1\narrow a 1 1\nloops 1 1\nrel a*a\n", 3, 1, "cannot be combined"),
    ("vertices 1\nfrobnicate\n", 2, 1, "unknown keyword"),
    ("vertices 1\nfield p 4\n", 2, 9, "prime"),
    ("vertices 1 2 3\narrow a 2 1\narrow b 3 2\nrel a*b +\n", 4, 9, "dangling"),
    ("vertices 1 2\narrow a 2 1\nrel 2 a\n", 3, 5, "coefficient"),
    ("vertices 1 x\n", 1, 12, "integer"),
    ("", 1, 1, "no vertices"),
])
def test_errors_carry_location(text, line, column, fragment):
    with pytest.raises(DSLError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert fragment in err.value.message


def test_comments_and_blank_lines():
    qf = parse("\n# header\nvertices 1 2   # two\n\narrow a 2 1 # one arrow\n")
    assert len(qf.base.arrows) == 1


def test_recognized_origins():
    assert parse(dump(QuiverFile(dynkin("D", 4, "subspace")))).base.origin[:3] == ("dynkin", "D", 4)
    assert parse(dump(QuiverFile(dynkin("E", 7)))).base.origin[:3] == ("dynkin", "E", 7)
    assert parse(dump(QuiverFile(cyclic_tube(3, 4)))).base.origin == ("tube", 3, 4)
    assert parse(dump(QuiverFile(canonical("D", 4)))).base.origin == ()


def test_load(tmp_path):
    path = tmp_path / "q.txt"
    path.write_text(FOUR_VERTEX, encoding="utf-8")
    assert load(path) == parse(FOUR_VERTEX)


bases = [dynkin("A", 3, "<>"), dynkin("D", 5, "subspace"), canonical("E", 6), canonical("A", 2, 1),
         cyclic_tube(3, 3), example_four_vertex()]


@settings(max_examples=40, deadline=None)
@given(base=st.sampled_from(bases), counts=st.dictionaries(st.integers(0, 6), st.integers(0, 3), max_size=3),
       d=st.integers(2, 4), field=st.sampled_from([None, QQ, GF(2), GF(101)]))
def test_round_trip(base, counts, d, field):
    counts = tuple(sorted((v, c) for v, c in counts.items() if v in base.vertices))
    qf = QuiverFile(base, counts, d if counts else 2, field)
    again = parse(dump(qf))
    assert again == qf
    assert dump(again) == dump(qf)
    flat = QuiverFile(qf.bound_quiver)
    assert parse(dump(flat)).bound_quiver == qf.bound_quiver
