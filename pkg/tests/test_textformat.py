import pytest
from hypothesis import given, strategies as st

from optangent.opalg import PresentedAlgebra
from optangent.operad import OperadPresentation, UnknownOperad, check_operad_relations
from optangent.rewrite import letter
from optangent.textformat import (ArityError, PresentationSyntaxError, emit, load,
                                  parse_presentation)

X, Y = letter(0), letter(1)


def test_spec_style_example():
    A = parse_presentation("ring Q; operad Com; gens x; rels (mu x x);")
    assert A.kind == "Com" and A.dims(3) == [1, 1, 0, 0]


def test_emit_frozen():
    A = PresentedAlgebra("Com", ["x", "dx"], [{X + X: 1}, {X + Y: 2}], name="T")
    assert emit(A) == ('ring Q;\noperad Com;\nname "T";\ngens x dx;\ndegrees 1 1;\n'
                       'rels\n  (mu x x)\n  (* 2 (mu x (d x)));\n')


def test_scalars_and_sugar():
    A = parse_presentation("operad Ass; gens x dx;\nrels (- (mu (d x) x) (* 3/2 x)) (+ x -1);")
    assert A.fmt(A.relations[0]) == "dx*x - 3/2*x"
    assert A.fmt(A.relations[1]) == "x - 1"


def test_mod_p_ring():
    A = parse_presentation("ring Z/5; operad Com; gens x; rels (* 6 (mu x x));")
    assert A.ring.p == 5 and A.relations[0] == {X + X: 1}


def test_lie_brackets():
    A = parse_presentation("operad Lie; gens x y; rels (- (mu x y) x);")
    assert A.lie_relations == ((((0, 1), 1), (0, -1)),)
    assert A.dims(3) == [0, 2, 0, 0]


def test_operad_presentation():
    P = parse_presentation("presentation Ass; ops mu/2;\n"
                           "rels (- (mu (mu $1 $2) $3) (mu $1 (mu $2 $3)));")
    assert isinstance(P, OperadPresentation) and check_operad_relations(P)


def test_arity_error_position():
    with pytest.raises(ArityError) as e:
        parse_presentation("operad Com; gens x;\nrels (mu x);")
    assert (e.value.line, e.value.col) == (2, 6)


@pytest.mark.parametrize("text,line,col", [
    ("operad Com; gens x; rels (mu x y);", 1, 32),
    ("operad Com; gens x; rels (mu x x)", 1, 21),
    ("operad Com; gens x; rels (mu x x;", 1, 33),
    ("operad Com; gens x x;", 1, 13),
    ("operad Com; gens x; bogus 1;", 1, 21),
])
def test_syntax_errors_are_positioned(text, line, col):
    with pytest.raises(PresentationSyntaxError) as e:
        parse_presentation(text)
    assert (e.value.line, e.value.col) == (line, col)


def test_unknown_operad():
    with pytest.raises(UnknownOperad):
        parse_presentation("operad Pois; gens x;")


def test_comments_ignored():
    A = parse_presentation("# header\noperad Com; # trailing\ngens x; rels (mu x x);")
    assert A.dims(2) == [1, 1, 0]


def test_fixtures_are_canonical(fixtures_dir):
    files = sorted(fixtures_dir.iterdir())
    assert files
    for f in files:
        text = f.read_text()
        once = emit(load(str(f)))
        assert once == text, f.name
        assert emit(parse_presentation(once)) == once


monos = st.lists(st.sampled_from([X, Y]), min_size=0, max_size=3).map("".join)
polys = st.dictionaries(monos, st.fractions(max_denominator=5).filter(bool), min_size=1,
                        max_size=3)


@given(st.sampled_from(["Com", "Ass"]), st.lists(polys, max_size=3))
def test_emit_parse_fixed_point(kind, rels):
    A = PresentedAlgebra(kind, ["x", "y"], rels, name="R")
    text = emit(A)
    B = parse_presentation(text)
    assert B.relations == A.relations
    assert emit(B) == text
