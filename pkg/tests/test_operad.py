import pytest
from hypothesis import given, strategies as st

from optangent.operad import (IndexOutOfRange, Node, SizeMismatch, UnknownOperad,
                              act_permutation, arity, builtin_morphism, builtin_operad,
                              check_operad_relations, compose, identity_morphism,
                              operad_map_combo, operad_normal_form, partial_compose,
                              right_nested, term_str)

MU = Node("mu", (1, 2))


def test_partial_compose_frozen():
    assert term_str(partial_compose(MU, 1, MU)) == "mu(mu(1,2),3)"
    assert term_str(partial_compose(MU, 2, MU)) == "mu(1,mu(2,3))"
    with pytest.raises(IndexOutOfRange):
        partial_compose(MU, 3, MU)


def test_builtin_relations_hold():
    for name in ("Com", "Ass", "Lie"):
        assert check_operad_relations(builtin_operad(name))
    with pytest.raises(UnknownOperad):
        builtin_operad("Pois")


def test_ass_to_com_kills_commutator():
    phi = builtin_morphism("Ass->Com")
    comm = ((MU, 1), (act_permutation(MU, (2, 1)), -1))
    assert operad_normal_form(builtin_operad("Com"), operad_map_combo(phi, comm)) == {}


def test_lie_to_ass_image_is_commutator():
    phi = builtin_morphism("Lie->Ass")
    img = operad_normal_form(builtin_operad("Ass"), operad_map_combo(phi, [(MU, 1)]))
    assert len(img) == 2 and sorted(img.values()) == [-1, 1]


def test_identity_morphism():
    P = builtin_operad("Ass")
    ident = identity_morphism(P)
    t = right_nested("mu", [1, 2, 3])
    assert operad_map_combo(ident, [(t, 1)]) == {t: 1}


def test_permutation_size_checked():
    with pytest.raises(SizeMismatch):
        act_permutation(MU, (1, 2, 3))


def _trees(n):
    if n == 1:
        return st.just(1)
    return st.integers(1, n - 1).flatmap(
        lambda k: st.tuples(_trees(k), _trees(n - k)).map(
            lambda ab: Node("mu", (ab[0], _shift(ab[1], k)))))


def _shift(t, k):
    if isinstance(t, int):
        return t + k
    return Node(t.op, tuple(_shift(c, k) for c in t.children))


@given(_trees(3), _trees(2), _trees(2), st.integers(1, 3), st.integers(1, 2))
def test_sequential_composition(t, u, v, i, j):
    # (t o_i u) o_{i+j-1} v = t o_i (u o_j v)
    left = partial_compose(partial_compose(t, i, u), i + j - 1, v)
    right = partial_compose(t, i, partial_compose(u, j, v))
    assert left == right


@given(_trees(3), _trees(2), _trees(2))
def test_parallel_composition(t, u, v):
    # (t o_1 u) o_{2+arity(u)-1} v = (t o_2 v) o_1 u for inputs 1 < 2
    a = partial_compose(partial_compose(t, 1, u), 1 + arity(u), v)
    b = partial_compose(partial_compose(t, 2, v), 1, u)
    assert a == b


@given(_trees(3), st.permutations([1, 2, 3]), st.permutations([1, 2, 3]))
def test_permutation_action_composes(t, s, r):
    # relabel by s then by r equals relabel by r.s
    rs = tuple(r[x - 1] for x in s)
    assert act_permutation(act_permutation(t, s), r) == act_permutation(t, rs)


@given(_trees(2), _trees(2))
def test_compose_arity(t, u):
    assert arity(compose(t, [u, u])) == 2 * arity(u)
