from hypothesis import given, strategies as st

from optangent.rewrite import (MonomialOrder, buchberger_com, complete_ass, format_poly, letter,
                               padd, pmul)

X, Y = letter(0), letter(1)
COM2 = MonomialOrder(True, (1, 1))
ASS2 = MonomialOrder(False, (1, 1))


def test_degrevlex_key_orders_degree_first():
    assert COM2.key(X + X) > COM2.key(Y)
    assert COM2.key(X + X) > COM2.key(X + Y) > COM2.key(Y + Y)


def test_buchberger_frozen():
    # (x^2 - y, x*y - 1): a zero-dimensional ideal of length 3
    rs = buchberger_com([{X + X: 1, Y: -1}, {X + Y: 1, "": -1}], COM2)
    assert rs.complete
    assert sum(rs.dims(6)) == 3


def test_free_ass_dims():
    rs = complete_ass([], ASS2, 4)
    assert rs.dims(4) == [1, 2, 4, 8, 16]


def test_ass_commutator_gives_polynomial_dims():
    rs = complete_ass([{X + Y: 1, Y + X: -1}], ASS2, 4)
    assert rs.complete and rs.dims(4) == [1, 2, 3, 4, 5]


def test_ass_inhomogeneous_completion():
    # yx -> xy - x: PBW basis of the 2-dim nonabelian Lie algebra's envelope
    rs = complete_ass([{X + Y: 1, Y + X: -1, X: -1}], ASS2, 5)
    assert rs.complete and rs.dims(3) == [1, 2, 3, 4]
    assert rs.normal_form({Y + X: 1}) == {X + Y: 1, X: -1}


def test_dump_lists_rules():
    rs = complete_ass([{Y + X: 1, X + Y: -1, X: 1}], ASS2, 3)
    assert "y*x -> x*y - x" in rs.dump(["x", "y"])


def test_format_poly():
    assert format_poly({X + X: 3, Y: -1, "": 2}, ["x", "y"], COM2) == "3*x^2 - y + 2"


polys = st.dictionaries(st.sampled_from(["", X, Y, X + X, X + Y, Y + Y, X + X + Y]),
                        st.integers(-3, 3).filter(bool), max_size=4)


@given(polys, polys)
def test_normal_form_is_a_ring_map_mod_ideal(f, g):
    rs = buchberger_com([{X + X: 1}, {X + Y + Y: 1, Y: -1}], COM2)
    nf = rs.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(padd(f, g)) == padd(nf(f), nf(g))
    assert nf(pmul(COM2, f, g)) == nf(pmul(COM2, nf(f), nf(g)))


words = st.text(alphabet=[X, Y], max_size=3)


@given(st.dictionaries(words, st.integers(-2, 2).filter(bool), max_size=3),
       st.dictionaries(words, st.integers(-2, 2).filter(bool), max_size=3))
def test_ass_normal_form_multiplicative(f, g):
    rs = complete_ass([{Y + X: 1, X + Y: -1, X: -1}], ASS2, 8)
    nf = rs.normal_form
    assert nf(pmul(ASS2, f, g)) == nf(pmul(ASS2, nf(f), nf(g)))
