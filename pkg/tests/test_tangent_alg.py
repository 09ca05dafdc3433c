import pytest
from hypothesis import given, settings, strategies as st

import optangent.tangent_alg as ta
from optangent.exactnum import GF
from optangent.operad import Node, builtin_morphism
from optangent.opalg import (heisenberg, nonabelian_lie, truncated_polynomial, upper_triangular,
                             zero_algebra)
from optangent.tangent_alg import (alpha, alpha_pairs, build_tangent_witness, check_alg_tangent_axioms,
                                   check_monad_square, check_tangent_monad, perturb)

AXIOMS = ["zero_section", "additive_projection", "additive_unit", "additive_assoc",
          "additive_comm", "naturality", "lift_projection", "flip_involution",
          "flip_projection", "flip_lift", "lift_coassoc", "yang_baxter", "lift_universality",
          "negation"]


@pytest.mark.parametrize("A", [truncated_polynomial(2), truncated_polynomial(3),
                               upper_triangular(), nonabelian_lie(), heisenberg(),
                               truncated_polynomial(3, GF(5)), zero_algebra("Ass")],
                         ids=lambda A: A.name)
def test_axioms_pass(A):
    rep = check_alg_tangent_axioms(A)
    assert rep.passed, rep.failures()
    assert rep.summary() == "ALL PASS (14 axioms)"
    assert [r.name for r in rep.results if r.counted] == AXIOMS


def test_witness_shapes():
    W = build_tangent_witness(truncated_polynomial(2))
    assert W.tangent.dim == 4 and W.tangent_n[2].dim == 6
    assert set(W.nat) >= {"p", "z", "s", "l", "c", "n", "pi1", "pi2"}


def test_perturbed_table_is_flagged():
    A = truncated_polynomial(2)
    bad = perturb(A, (A.idx("x"), A.idx("1")), {})
    rep = check_alg_tangent_axioms(bad)
    assert not rep.passed
    assert any(r.name.startswith("certify") for r in rep.failures())


def test_wrong_lift_is_caught(monkeypatch):
    def bad_l(X):
        return ta._named(ta._blocks(ta.tangent(X), ta.T2(X), X.dim, 2,
                                    {0: [(0, 1)], 1: [(1, 1)]}), "l", X)
    monkeypatch.setattr(ta, "l", bad_l)
    rep = check_alg_tangent_axioms(truncated_polynomial(2))
    failed = {r.name for r in rep.failures()}
    assert "lift_projection" in failed


def test_wrong_flip_is_caught(monkeypatch):
    def bad_c(X):
        return ta._named(ta._blocks(ta.T2(X), ta.T2(X), X.dim, 4,
                                    {0: [(0, 1)], 1: [(1, 1)], 2: [(2, 1)], 3: [(3, -1)]}),
                         "c", X)
    monkeypatch.setattr(ta, "c", bad_c)
    rep = check_alg_tangent_axioms(upper_triangular())
    assert not rep.passed


def test_alpha_frozen():
    mu = Node("mu", (1, 2))
    # mu(x, dy): no d-free part, d-linear part mu(x, y); mu(dx, dy) is dropped
    assert alpha({(mu, ("x", "dy")): 1}) == ({}, {(mu, ("x", "y")): 1})
    assert alpha({(mu, ("x", "y")): 2}) == ({(mu, ("x", "y")): 2}, {})
    assert alpha({(mu, ("dx", "dy")): 1}) == ({}, {})


def test_alpha_pairs_is_leibniz():
    mu = Node("mu", (1, 2))
    first, second = alpha_pairs(mu, [("x", "u"), ("y", "v")])
    assert first == {(mu, ("x", "y")): 1}
    assert second == {(mu, ("u", "y")): 1, (mu, ("x", "v")): 1}


@pytest.mark.parametrize("P", ["Com", "Ass", "Lie"])
def test_monad_compatibility(P):
    rep = check_tangent_monad(P, trials=8)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("name", ["Ass->Com", "Lie->Ass"])
def test_distributive_square(name):
    assert check_monad_square(builtin_morphism(name), trials=8).passed


@settings(max_examples=8)
@given(st.integers(1, 4), st.sampled_from([0, 2, 3, 5]))
def test_truncated_polynomials_satisfy_axioms(n, p):
    ring = GF(p) if p else None
    A = truncated_polynomial(n, ring) if ring else truncated_polynomial(n)
    assert check_alg_tangent_axioms(A).passed


@settings(max_examples=15)
@given(st.integers(0, 2), st.integers(0, 2), st.sampled_from([{}, {0: 1}, {1: -1}, {2: 1}]))
def test_perturbation_passes_iff_still_an_algebra(i, j, value):
    # some edits give a genuine algebra (x*x := 0 in Q[x]/(x^3)); the report must agree
    bad = perturb(truncated_polynomial(3), (i, j), value)
    assert check_alg_tangent_axioms(bad).passed == bad.certification().passed
