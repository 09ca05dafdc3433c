from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from optangent.exactnum import GF
from optangent.operad import builtin_morphism
from optangent.opalg import (AlgebraMorphism, PresentedAlgebra, algebra_pushout,
                             check_morphism, heisenberg, identity, induce_algebra,
                             nonabelian_lie, restrict_algebra, sc_algebra, semidirect_tangent,
                             to_presented, to_structure_constants, truncated_polynomial,
                             upper_triangular)
from optangent.rewrite import letter

X, Y = letter(0), letter(1)


def test_truncated_polynomial_product():
    A = truncated_polynomial(3)
    assert A.mul(A.vec("x"), A.vec("x")) == A.vec("x2")
    assert A.mul(A.vec("x"), A.vec("x2")) == {}
    assert A.certification().passed


def test_builtin_algebras_certify():
    for A in (upper_triangular(), nonabelian_lie(), heisenberg(), truncated_polynomial(2, GF(5))):
        assert A.certification().passed, A.name


def test_bad_table_fails_certification():
    B = sc_algebra("Ass", ["1", "x"], {("1", "1"): "1", ("1", "x"): "x", ("x", "1"): "x",
                                      ("x", "x"): "1"}, "1", certify=False)
    assert B.certification().passed  # Q[x]/(x^2-1) is associative
    C = sc_algebra("Ass", ["e", "f"], {("e", "f"): "e", ("f", "e"): "f", ("e", "e"): "e"},
                   None, certify=False)
    assert not C.certification().passed


def test_semidirect_tangent_dual_numbers():
    A = truncated_polynomial(2)
    TA = semidirect_tangent(A)
    assert TA.dim == 4
    a = {TA.idx("(1,0)"): 1, TA.idx("(x,0)"): 1}
    assert TA.mul(a, a) == {TA.idx("(1,0)"): 1, TA.idx("(x,0)"): 2}
    assert TA.mul(TA.vec("(x,0)"), TA.vec("(0,1)")) == TA.vec("(0,x)")


def test_presented_dims_frozen():
    assert PresentedAlgebra("Com", ["x"], [{X * 3: 1}]).dims(4) == [1, 1, 1, 0, 0]
    assert PresentedAlgebra("Ass", ["x", "y"], [{X + Y: 1, Y + X: -1}]).dims(4) == [1, 2, 3, 4, 5]
    assert PresentedAlgebra("Lie", ["x", "y"]).dims(5) == [0, 2, 1, 2, 3, 6]
    aff = PresentedAlgebra("Lie", ["x", "y"], lie_relations=[[((0, 1), 1), (0, -1)]])
    assert aff.dims(3) == [0, 2, 0, 0]


def test_elements_and_normal_forms():
    A = PresentedAlgebra("Com", ["x"], [{X + X: 1}])
    x = A.gen("x")
    assert (1 + x) * (1 + x) == 1 + 2 * x
    assert str((x * x).normal_form()) == "0"


def test_morphism_checks_relations():
    A = PresentedAlgebra("Com", ["x"], [{X + X: 1}])
    B = PresentedAlgebra("Com", ["y"], [{X * 3: 1}])
    good = AlgebraMorphism(A, B, {"x": {X + X: 1}})
    bad = AlgebraMorphism(A, B, {"x": {X: 1}})
    assert check_morphism(good).passed
    assert not check_morphism(bad).passed


def test_then_is_diagrammatic():
    A = PresentedAlgebra("Com", ["x"])
    f = AlgebraMorphism(A, A, {"x": {X + X: 1}})
    g = AlgebraMorphism(A, A, {"x": {X: 1, "": 1}})
    # first f then g: x -> x^2 -> (x+1)^2
    assert f.then(g).images["x"] == {X + X: 1, X: 2, "": 1}
    assert f.then(identity(A)).differs(f, 3) is None


def test_pushout_of_polynomial_rings():
    A = PresentedAlgebra("Com", ["x"])
    B = PresentedAlgebra("Com", ["x", "y"])
    f = AlgebraMorphism(A, B, {"x": {X: 1}})
    P = algebra_pushout(f, f)
    assert P.dims(4) == [1, 3, 6, 10, 15]  # Q[x, y, y~]


def test_sc_presented_roundtrip():
    A = upper_triangular()
    B = to_structure_constants(to_presented(A))
    assert B.dim == 3 and B.certification().passed


def test_lie_presentation_to_tables():
    A = to_structure_constants(PresentedAlgebra("Lie", ["x", "y"],
                                                lie_relations=[[((0, 1), 1), (0, -1)]]))
    assert A.dim == 2 and A.tables["mu"][(0, 1)] == {0: 1}


def test_restrict_ass_to_lie():
    L = restrict_algebra(builtin_morphism("Lie->Ass"), upper_triangular())
    assert L.operad.name == "Lie" and L.certification().passed
    e11, e12 = L.vec("e11"), L.vec("e12")
    assert L.mul(e11, e12) == e12


def test_induce_changes_operad():
    A = PresentedAlgebra("Ass", ["x", "y"])
    B = induce_algebra(builtin_morphism("Ass->Com"), A)
    assert B.kind == "Com" and B.dims(2) == [1, 2, 3]


coeffs = st.integers(-4, 4)


@given(st.lists(coeffs, min_size=3, max_size=3), st.lists(coeffs, min_size=3, max_size=3),
       st.lists(coeffs, min_size=3, max_size=3))
def test_truncated_polynomial_associative(a, b, c):
    A = truncated_polynomial(3)
    u, v, w = ({i: Fraction(x) for i, x in enumerate(t) if x} for t in (a, b, c))
    assert A.mul(A.mul(u, v), w) == A.mul(u, A.mul(v, w))


@given(st.lists(coeffs, min_size=6, max_size=6), st.lists(coeffs, min_size=6, max_size=6))
def test_semidirect_product_formula(a, b):
    # (a0, a1)(b0, b1) = (a0 b0, a0 b1 + a1 b0)
    A = upper_triangular()
    TA = semidirect_tangent(A)
    u = {i: Fraction(x) for i, x in enumerate(a) if x}
    v = {i: Fraction(x) for i, x in enumerate(b) if x}
    prod = TA.mul(u, v)

    def part(w, k):
        return {i - 3 * k: c for i, c in w.items() if 3 * k <= i < 3 * k + 3}
    assert part(prod, 0) == A.mul(part(u, 0), part(v, 0))
    mixed = {}
    for t in (A.mul(part(u, 0), part(v, 1)), A.mul(part(u, 1), part(v, 0))):
        for i, c in t.items():
            mixed[i] = mixed.get(i, 0) + c
    assert part(prod, 1) == {i: c for i, c in mixed.items() if c}


polys = st.dictionaries(st.sampled_from(["", X, Y, X + Y, Y + Y]), st.integers(-2, 2).filter(bool),
                        max_size=3)


@given(polys, polys)
def test_morphism_is_multiplicative(f, g):
    A = PresentedAlgebra("Com", ["x", "y"], [{X + X: 1}])
    h = AlgebraMorphism(A, A, {"x": {X + Y: 1}, "y": {Y: 1, "": 1}})
    assert check_morphism(h, 4).passed
    lhs = h.apply(A.mul(f, g), 6)
    rhs = A.nf(A.mul(h.apply(f, 6), h.apply(g, 6)), 6)
    assert lhs == rhs
