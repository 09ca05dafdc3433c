import pytest
from hypothesis import given, settings, strategies as st

from optangent.enveloping import (UNIT, EnvelopingOperad, EnvSymbol, enveloping_algebra,
                                  enveloping_operad, env_symbol_normal_form, operation_basis)
from optangent.operad import Node, UnsupportedOperad
from optangent.opalg import PresentedAlgebra, truncated_polynomial
from optangent.rewrite import letter

X = letter(0)
NU = Node("nu", (1, 2))


def dual(kind="Com", n=2):
    return PresentedAlgebra(kind, ["x"], [{X * n: 1}], name=f"Q[x]/(x^{n})")


def test_operation_basis_sizes():
    assert [len(operation_basis("Ass", n)) for n in range(4)] == [1, 1, 2, 6]
    assert [len(operation_basis("Com", n)) for n in range(4)] == [1, 1, 1, 1]
    assert [len(operation_basis("Lie", n)) for n in range(1, 5)] == [1, 1, 2, 6]


def test_component_dims_frozen():
    assert EnvelopingOperad("Com", dual(), 2, 3).dims() == [2, 2, 2]
    assert EnvelopingOperad("Ass", dual("Ass"), 2, 3).dims() == [2, 4, 16]


def test_absorption_normal_form():
    # (nu; x, x| vanishes in Q[x]/(x^2)
    s = EnvSymbol(Node("nu", (1, Node("nu", (2, 3)))), ("x", "x"), 1)
    assert env_symbol_normal_form(s, "Com", dual()) == {}


def test_unit_symbol_label():
    env = EnvelopingOperad("Com", dual(), 1, 3)
    assert [s.label(env.A) for s in env.basis(0)] == ["(1|", "(1;x|"]
    assert env.basis(0)[0].mu == UNIT


def test_initial_algebra_dims():
    Q = PresentedAlgebra("Com", [])
    assert EnvelopingOperad("Com", Q, 2, 3).dims() == [1, 1, 1]
    assert EnvelopingOperad("Ass", PresentedAlgebra("Ass", []), 2, 3).dims() == [1, 1, 2]
    assert EnvelopingOperad("Lie", PresentedAlgebra("Lie", []), 3, 3).dims() == [0, 1, 1, 2]


def test_enveloping_algebra_dims_and_certificates():
    U = enveloping_algebra("Com", dual())
    V = enveloping_algebra("Ass", dual("Ass"))
    assert (U.dim, V.dim) == (2, 4)
    assert U.certification().passed and V.certification().passed


def test_enveloping_algebra_of_infinite_algebra_is_truncated():
    U = enveloping_algebra("Com", PresentedAlgebra("Com", ["x"]), 3)
    assert U.dim == 4 and not U.certified


def test_presentation_object():
    P = enveloping_operad("Com", dual(), 1)
    assert [g.arity for g in P.generators] == [0, 0, 1, 1]


def test_kind_mismatch():
    with pytest.raises(UnsupportedOperad):
        EnvelopingOperad("Ass", dual("Com"), 1, 3)


def test_sc_input_accepted():
    assert enveloping_algebra("Com", truncated_polynomial(3)).dim == 3


@settings(max_examples=6)
@given(st.integers(1, 4))
def test_arity_zero_is_A(n):
    # P^A(0) is A itself
    assert EnvelopingOperad("Com", dual("Com", n), 0, n).dims()[0] == n
    assert EnvelopingOperad("Ass", dual("Ass", n), 0, n).dims()[0] == n


@settings(max_examples=4)
@given(st.integers(1, 3))
def test_ass_envelope_is_A_tensor_Aop(n):
    assert enveloping_algebra("Ass", dual("Ass", n), n).dim == n * n


@settings(max_examples=4)
@given(st.integers(1, 3))
def test_com_envelope_is_A(n):
    assert enveloping_algebra("Com", dual("Com", n), n).dim == n
