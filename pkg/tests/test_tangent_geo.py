import pytest
from hypothesis import given, settings, strategies as st

from optangent.operad import builtin_morphism
from optangent.opalg import (AlgebraMorphism, PresentedAlgebra, check_morphism,
                             nonabelian_lie, upper_triangular)
from optangent.rewrite import letter
from optangent.tangent_geo import (T, Derivation, NotSection, Tn, check_geo_tangent_axioms,
                                   derivation_space, dist_law_shriek, dist_law_star, formal_d,
                                   geo_nat, geo_tangent, inverse_on_generators, is_iso_truncated,
                                   kahler_module, kahler_oracle_dims, l_map, leibniz,
                                   lift_comparison, sabotaged_sum, same_derivation,
                                   tangent_map, to_derivation, to_vector_field, vf_deriv_bridge)

X, Y = letter(0), letter(1)


def qx(n=None):
    return PresentedAlgebra("Com", ["x"], [{X * n: 1}] if n else [], name=f"Q[x]/(x^{n})")


def qxy(rels=()):
    return PresentedAlgebra("Com", ["x", "y"], rels, name="Q[x,y]")


def test_tangent_presentation_frozen():
    TA = T(qx(2))
    assert TA.generators == ("x", "dx")
    assert [TA.fmt(r) for r in TA.relations] == ["x^2", "2*x*dx"]
    # {1, x, dx, dx^2, dx^3}: x*dx dies since 2 x dx = 0
    assert TA.dims(3) == [1, 2, 1, 1]


def test_tangent_of_free_ass_is_free():
    assert T(PresentedAlgebra("Ass", ["x"])).dims(3) == [1, 2, 4, 8]


def test_tn_and_iterated_names():
    A = qx()
    assert Tn(A, 2).generators == ("x", "d1x", "d2x")
    assert T(T(A)).generators == ("x", "dx", "d'x", "d'dx")
    assert geo_tangent(A, 2).dims(2) == [1, 3, 6]


def test_structure_maps_are_morphisms():
    A = qx(3)
    for name in ("p", "z", "s", "l", "c", "n"):
        geo_nat(name, A)


def test_tangent_map_functorial():
    A = qxy()
    f = AlgebraMorphism(A, A, {"x": {X + Y: 1}, "y": {Y: 1}})
    g = AlgebraMorphism(A, A, {"x": {X: 1}, "y": {X + X: 1}})
    assert tangent_map(f.then(g)).differs(tangent_map(f).then(tangent_map(g)), 3) is None


@pytest.mark.parametrize("A,bound", [
    (qx(2), 4), (qxy(), 4),
    (PresentedAlgebra("Ass", ["x", "y"], [{X + Y: 1, Y + X: -1, X: -1}], name="U"), 3)],
    ids=["dual", "qxy", "ass_rel"])
def test_geo_axioms_pass(A, bound):
    rep = check_geo_tangent_axioms(A, bound)
    assert rep.passed, rep.failures()
    assert rep.summary() == "ALL PASS (14 axioms)"


def test_sabotaged_sum_is_caught():
    A = qx(2)
    rep = check_geo_tangent_axioms(A, 3, s_override=sabotaged_sum(A))
    failed = {r.name for r in rep.failures()}
    assert {"additive_unit", "additive_comm", "negation"} <= failed


def test_wrong_lift_is_caught(monkeypatch):
    import optangent.tangent_geo as tg

    def bad_l(A):
        # d'x -> dx instead of 0
        return tg._blockmap(T(T(A)), T(A), A.ngens, {0: [(0, 1)], 2: [(1, 1)], 3: [(1, 1)]},
                            "l_bad")
    monkeypatch.setattr(tg, "l_map", bad_l)
    rep = check_geo_tangent_axioms(qxy(), 3)
    assert "lift_projection" in {r.name for r in rep.failures()}


def test_lift_comparison_is_iso():
    P, v = lift_comparison(qx(2), 3)
    assert is_iso_truncated(v, 3).iso


def test_dist_law_star_ass_com():
    h = dist_law_star(builtin_morphism("Ass->Com"), qx(), 3)
    res = is_iso_truncated(h, 3)
    assert res.kind == "SurjNotInj" and res.degree == 2
    assert res.source_dims[:3] == [1, 2, 4] and res.ranks[:3] == [1, 2, 3]
    assert res.witness in ("dx*x - x*dx", "x*dx - dx*x")


def test_dist_law_shriek_lie_ass():
    h = dist_law_shriek(builtin_morphism("Lie->Ass"), nonabelian_lie(), 3)
    res = is_iso_truncated(h, 3)
    assert res.iso and res.source_dims == [1, 4, 14, 48]
    assert is_iso_truncated(inverse_on_generators(h), 3).iso


def test_dist_law_star_on_sc_input():
    h = dist_law_star(builtin_morphism("Lie->Ass"), upper_triangular(), 2)
    assert check_morphism(h, 2).passed


def test_not_surjective_detected():
    A, B = qx(), qxy()
    h = AlgebraMorphism(A, B, {"x": {X: 1}})
    assert is_iso_truncated(h, 2).kind == "NotSurj"


def test_kahler_cubic():
    km = kahler_module(qx(3), 3)
    assert km.generators == ["dx"] and km.relations == ["3*x^2*dx"]
    assert km.dims == [0, 1, 1, 0] and km.dim == 2 and km.agrees


@pytest.mark.parametrize("rels", [[{X + Y: 1}], [{X + X: 1, Y: -1}], [{X * 3: 1}, {Y + Y: 1}]])
def test_kahler_oracle_agrees(rels):
    km = kahler_module(qxy(rels), 3)
    assert km.agrees, (km.dims, km.oracle_dims)


def test_derivation_counts():
    assert len(derivation_space(qx(2))) == 1
    assert len(derivation_space(qx(3))) == 2
    assert len(derivation_space(PresentedAlgebra("Com", []))) == 0
    assert len(derivation_space(upper_triangular())) == 2
    assert len(derivation_space(nonabelian_lie())) == 2


def test_bridge_roundtrip():
    A = qx(3)
    for d in derivation_space(A):
        v = vf_deriv_bridge("toVectorField", d)
        assert check_morphism(v).passed
        assert same_derivation(vf_deriv_bridge("toDerivation", v, A=A), d)


def test_non_section_rejected():
    A = qx(2)
    TA = T(A)
    v = AlgebraMorphism(TA, A, {"x": {}, "dx": {X: 1}})
    with pytest.raises(NotSection):
        to_derivation(v, A)


polys = st.dictionaries(st.sampled_from(["", X, Y, X + Y, Y + Y, X + X]),
                        st.integers(-3, 3).filter(bool), max_size=3)


@given(polys, polys)
def test_formal_d_is_leibniz(f, g):
    A = qxy()
    TA = T(A)
    lhs = formal_d(A, 1, A.mul(f, g))
    rhs = TA.mul(formal_d(A, 1, f), g)
    rhs = {**rhs}
    for m, c in TA.mul(f, formal_d(A, 1, g)).items():
        rhs[m] = rhs.get(m, 0) + c
    assert TA.nf(lhs, 6) == TA.nf({m: c for m, c in rhs.items() if c}, 6)


@settings(max_examples=15)
@given(polys, polys)
def test_derivations_satisfy_leibniz(f, g):
    A = qxy([{X * 3: 1}])
    for d in derivation_space(A, 3):
        vals = [d.values[x] for x in A.generators]
        lhs = A.nf(leibniz(A.mul(f, g), vals, A.mul, True), 6)
        rhs = A.nf(A.mul(leibniz(f, vals, A.mul, True), g), 6)
        for m, c in A.nf(A.mul(f, leibniz(g, vals, A.mul, True)), 6).items():
            rhs[m] = rhs.get(m, 0) + c
        assert lhs == {m: c for m, c in rhs.items() if c}


@settings(max_examples=10)
@given(st.integers(2, 4), st.integers(2, 3))
def test_kahler_oracle_on_monomial_ideals(a, b):
    A = qxy([{X * a: 1}, {Y * b: 1}])
    km = kahler_module(A, 3)
    assert km.agrees
