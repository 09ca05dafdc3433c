import pytest

from optangent.opalg import PresentedAlgebra
from optangent.operad import UnsupportedOperad
from optangent.rewrite import letter
from optangent.slice_env import (AlgebraUnder, BundleCheckFailed, OperadicModule, bundle_check,
                                 bundle_to_module, check_slice_equivalence, env_route_tangent,
                                 free_module, free_module_algebra, inclusion, kahler_as_module,
                                 module_bundle_bridge, module_to_bundle,
                                 relative_derivation_space, sabotage_lift, same_module,
                                 same_span, section_space, tangent_bundle, vertical_tangent,
                                 zero_module)
from optangent.tangent_geo import T, to_derivation

X, Y = letter(0), letter(1)


def com(gens, rels=(), name=""):
    return PresentedAlgebra("Com", gens, rels, name=name)


def test_vertical_tangent_frozen():
    beta = inclusion(com(["y"]), com(["x", "y"], [{X + X: 1}]))
    V = vertical_tangent(beta)
    assert V.generators == ("x", "y", "dx", "dy")
    assert [V.fmt(r) for r in V.relations] == ["x^2", "2*x*dx", "dy"]
    assert V.dims(3) == [1, 3, 4, 5]


def test_vertical_tangent_of_identity_is_base():
    A = com(["x"])
    V = vertical_tangent(inclusion(A, A), 3)
    assert V.dims(3) == A.dims(3)


def test_relative_derivations_and_sections_match():
    beta = inclusion(com(["y"]), com(["x", "y"], [{X + X: 1}]))
    B = beta.target
    secs = section_space(vertical_tangent(beta), B, 3)
    ders = relative_derivation_space(beta, 3)
    assert len(secs) == len(ders) == 3
    assert same_span([to_derivation(s, B, 3) for s in secs], ders, 3)
    for d in ders:
        assert not B.nf(d.values["y"], 3)  # vertical: kills the image of A


@pytest.mark.parametrize("kind,bound", [("Com", 4), ("Ass", 3)])
def test_slice_equivalence(kind, bound):
    A = PresentedAlgebra(kind, ["x"])
    B = PresentedAlgebra(kind, ["x", "y"])
    rep = check_slice_equivalence(kind, A, AlgebraUnder(inclusion(A, B)), bound)
    assert rep.passed, rep.failures()


def test_slice_equivalence_with_relations():
    A = com(["x"], [{X * 3: 1}])
    B = com(["x", "y"], [{X * 3: 1}, {X + Y: 1}])
    assert check_slice_equivalence("Com", A, inclusion(A, B), 3).passed


def test_env_route_matches_vertical_dims():
    A = com(["x"])
    B = com(["x", "y"], [{Y + Y: 1, X: -1}])
    beta = inclusion(A, B)
    assert env_route_tangent(beta, 3).dims(3) == vertical_tangent(beta, 3).dims(3)


def test_lie_slice_unsupported():
    A = PresentedAlgebra("Lie", ["x"])
    with pytest.raises(UnsupportedOperad):
        check_slice_equivalence("Lie", A, inclusion(A, PresentedAlgebra("Lie", ["x", "y"])), 2)


def test_module_validation():
    A = com(["x"])
    with pytest.raises(ValueError):
        OperadicModule(A, ["m"], [{X: 1}])  # degree zero in m


def test_free_module_algebra_dims():
    Q = com([])
    U = free_module_algebra(Q, free_module(Q, ["m1", "m2"]))
    assert U.algebra.dims(3) == [1, 2, 3, 4]
    assert U.base is Q


@pytest.mark.parametrize("module", ["kahler", "zero", "free"])
def test_bundle_roundtrip_cubic(module):
    A = com(["x"], [{X * 3: 1}], "Q[x]/(x^3)")
    M = {"kahler": kahler_as_module, "zero": zero_module,
         "free": lambda A: free_module(A, ["m"])}[module](A)
    d = module_bundle_bridge("toBundle", A, M)
    back = module_bundle_bridge("toModule", A, d)
    assert same_module(back, M)
    assert bundle_check(module_to_bundle(back)).passed


def test_kahler_bundle_is_tangent_bundle():
    A = com(["x"], [{X * 3: 1}])
    E = module_to_bundle(kahler_as_module(A)).total
    assert E.dims(3) == T(A).dims(3)
    assert bundle_check(tangent_bundle(A)).passed


def test_sabotaged_lift_flagged():
    A = com(["x"], [{X * 3: 1}])
    d = sabotage_lift(module_to_bundle(kahler_as_module(A)))
    rep = bundle_check(d)
    assert not rep.passed and "lift_universality" in {r.name for r in rep.failures()}
    with pytest.raises(BundleCheckFailed):
        module_bundle_bridge("toModule", A, d)


def test_bundle_axiom_names():
    rep = bundle_check(tangent_bundle(com(["x"])))
    assert [r.name for r in rep.results if r.counted] == [
        "zero_section", "additive_projection", "additive_unit", "additive_comm",
        "additive_assoc", "lift_zero", "lift_projection", "lift_additive", "lift_coassoc",
        "lift_universality"]


def test_bundle_to_module_reads_fiber():
    A = com(["x"])
    M = bundle_to_module(module_to_bundle(OperadicModule(A, ["m"], [{X + letter(1): 1}])))
    assert M.generators == ["m"] and len(M.relations) == 1
