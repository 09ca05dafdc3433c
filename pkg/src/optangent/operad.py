"""Operadic terms, presentations of the builtin operads, and operad morphisms.

A term is either a leaf (an ``int`` input label, 1-based) or a ``Node``
carrying an operation name and a tuple of child terms.

>>> mu = Node("mu", (1, 2))
>>> partial_compose(mu, 2, mu)
Node(op='mu', children=(1, Node(op='mu', children=(2, 3))))
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Union

from .exactnum import QQ, RingSpec
from .rewrite import letter, padd

CommutativeMonomial = "CommutativeMonomial"
AssociativeWord = "AssociativeWord"
LiePBW = "LiePBW"
Linear = "Linear"
EnvelopingSymbol = "EnvelopingSymbol"
UnaryComposition = "UnaryComposition"


class IndexOutOfRange(IndexError):
    pass


class SizeMismatch(ValueError):
    pass


class UnknownSymbol(KeyError):
    pass


class UnknownOperad(ValueError):
    pass


class UnsupportedOperad(ValueError):
    pass


class NotAssociative(ValueError):
    pass


class NotUnital(ValueError):
    pass


class Node(NamedTuple):
    op: str
    children: tuple


Term = Union[int, Node]


@dataclass(frozen=True)
class OpSymbol:
    name: str
    arity: int


# -- term combinatorics -------------------------------------------------------

def leaves(t: Term) -> list[int]:
    if isinstance(t, int):
        return [t]
    out = []
    for c in t.children:
        out.extend(leaves(c))
    return out


def arity(t: Term) -> int:
    return len(leaves(t))


def is_wellformed(t: Term, gens: dict | None = None) -> bool:
    ls = leaves(t)
    if sorted(ls) != list(range(1, len(ls) + 1)):
        return False

    def walk(s):
        if isinstance(s, int):
            return True
        if gens is not None and gens.get(s.op) != len(s.children):
            return False
        return all(walk(c) for c in s.children)
    return walk(t)


def relabel(t: Term, f) -> Term:
    if isinstance(t, int):
        return f(t)
    return Node(t.op, tuple(relabel(c, f) for c in t.children))


def substitute(t: Term, subs: dict) -> Term:
    """Replace leaf ``j`` by the term ``subs[j]`` (no relabeling)."""
    if isinstance(t, int):
        return subs.get(t, t)
    return Node(t.op, tuple(substitute(c, subs) for c in t.children))


def partial_compose(t: Term, i: int, u: Term) -> Term:
    """t o_i u: graft u at the leaf labelled i."""
    n, k = arity(t), arity(u)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"input {i} outside 1..{n}")
    graft = relabel(u, lambda j: j + i - 1)

    def go(s):
        if isinstance(s, int):
            if s == i:
                return graft
            return s if s < i else s + k - 1
        return Node(s.op, tuple(go(c) for c in s.children))
    return go(t)


def compose(t: Term, us: list) -> Term:
    """Full composition t(u_1, ..., u_n)."""
    if len(us) != arity(t):
        raise SizeMismatch("need one term per input")
    offs = []
    acc = 0
    for u in us:
        offs.append(acc)
        acc += arity(u)
    subs = {j + 1: relabel(u, lambda x, o=offs[j]: x + o) for j, u in enumerate(us)}
    return substitute(t, subs)


def act_permutation(t: Term, sigma) -> Term:
    """Relabel leaf j as sigma(j); sigma is the tuple (sigma(1), ..., sigma(n))."""
    sigma = tuple(sigma)
    if len(sigma) != arity(t) or sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise SizeMismatch("permutation size does not match arity")
    return relabel(t, lambda j: sigma[j - 1])


def term_str(t: Term) -> str:
    if isinstance(t, int):
        return str(t)
    return f"{t.op}(" + ",".join(term_str(c) for c in t.children) + ")"


def right_nested(op: str, labels) -> Term:
    labels = list(labels)
    if len(labels) == 1:
        return labels[0]
    return Node(op, (labels[0], right_nested(op, labels[1:])))


# -- presentations ------------------------------------------------------------

@dataclass(frozen=True)
class OperadPresentation:
    name: str
    generators: tuple
    relations: tuple  # each: tuple of (Term, scalar) pairs, the combination = 0
    nf_strategy: str
    ring: RingSpec = QQ
    payload: object = field(default=None, compare=False)

    def arities(self) -> dict:
        return {g.name: g.arity for g in self.generators}

    def gen(self, name: str) -> OpSymbol:
        for g in self.generators:
            if g.name == name:
                return g
        raise UnknownSymbol(name)

    @property
    def product(self) -> str:
        """Name of the binary generator of Com/Ass/Lie."""
        return self.generators[0].name

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SingleObject:
    """Marker for the one-object operad A. built from an associative unital algebra."""
    algebra: object


def builtin_operad(name, ring: RingSpec = QQ) -> OperadPresentation:
    if isinstance(name, SingleObject):
        return _single_object(name.algebra)
    if name == "Ass":
        mu = Node("mu", (1, 2))
        rel = ((partial_compose(mu, 2, mu), ring.one), (partial_compose(mu, 1, mu), -ring.one))
        return OperadPresentation("Ass", (OpSymbol("mu", 2),), (rel,), AssociativeWord, ring)
    if name == "Com":
        nu = Node("nu", (1, 2))
        assoc = ((partial_compose(nu, 2, nu), ring.one), (partial_compose(nu, 1, nu), -ring.one))
        sym = ((act_permutation(nu, (2, 1)), ring.one), (nu, -ring.one))
        return OperadPresentation("Com", (OpSymbol("nu", 2),), (assoc, sym),
                                  CommutativeMonomial, ring)
    if name == "Lie":
        mu = Node("mu", (1, 2))
        anti = ((act_permutation(mu, (2, 1)), ring.one), (mu, ring.one))
        left = partial_compose(mu, 1, mu)  # mu(mu, 1)
        jac = tuple((act_permutation(left, s), ring.one)
                    for s in ((1, 2, 3), (2, 3, 1), (3, 1, 2)))
        return OperadPresentation("Lie", (OpSymbol("mu", 2),), (anti, jac), LiePBW, ring)
    raise UnknownOperad(str(name))


def _single_object(A) -> OperadPresentation:
    if A.operad.name != "Ass" or not A.certified:
        raise NotAssociative("A. needs a certified associative algebra")
    if A.unit is None:
        raise NotUnital("A. needs a unital algebra")
    ring = A.ring
    op = A.operad.product
    gens = tuple(OpSymbol(b, 1) for b in A.basis)
    rels = []
    for i, bi in enumerate(A.basis):
        for j, bj in enumerate(A.basis):
            combo = [(Node(bi, (Node(bj, (1,)),)), ring.one)]
            for k, c in A.tables[op].get((i, j), {}).items():
                combo.append((Node(A.basis[k], (1,)), -c))
            rels.append(tuple(combo))
    unit = [(Node(A.basis[k], (1,)), c) for k, c in A.unit.items()] + [(1, -ring.one)]
    rels.append(tuple(unit))
    return OperadPresentation(f"{A.name}.", gens, tuple(rels), UnaryComposition, ring, A)


# -- normal forms of operations -------------------------------------------------

def free_eval(kind: str, t: Term, args, op: str | None = None) -> dict:
    """Evaluate ``t`` in the free Com/Ass/Lie algebra on letters; args are polys.

    ``kind`` is the operad name. Lie brackets expand into commutators.
    """
    comm = kind == "Com"

    def mul(f, g):
        out = {}
        for a, x in f.items():
            for b, y in g.items():
                m = "".join(sorted(a + b)) if comm else a + b
                z = out.get(m, 0) + x * y
                if z:
                    out[m] = z
                else:
                    out.pop(m, None)
        return out

    def go(s):
        if isinstance(s, int):
            return args[s - 1]
        if len(s.children) != 2 or (op is not None and s.op != op):
            raise UnknownSymbol(s.op)
        a, b = go(s.children[0]), go(s.children[1])
        if kind == "Lie":
            return padd(mul(a, b), mul(b, a), -1)
        return mul(a, b)
    return go(t)


def operad_normal_form(P: OperadPresentation, combo) -> dict:
    """Canonical coordinates of a linear combination of terms of P."""
    if isinstance(combo, dict):
        combo = combo.items()
    out: dict = {}
    for t, c in combo:
        for k, x in _term_nf(P, t).items():
            y = out.get(k, 0) + c * x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def _term_nf(P: OperadPresentation, t: Term) -> dict:
    s = P.nf_strategy
    if s in (CommutativeMonomial, AssociativeWord, LiePBW):
        n = arity(t)
        args = [{letter(j): 1} for j in range(n)]
        return free_eval(P.name, t, args, P.product)
    if s == UnaryComposition:
        A = P.payload
        from .opalg import vmul
        vec = dict(A.unit)
        node = t
        chain = []
        while not isinstance(node, int):
            chain.append(node.op)
            node = node.children[0]
        for name in reversed(chain):
            vec = vmul(A, {A.basis.index(name): A.ring.one}, vec)
        return {("A", k): c for k, c in vec.items()}
    if s == Linear:
        return {t: 1}
    raise UnsupportedOperad(f"no normal form for strategy {s}")


def check_operad_relations(P: OperadPresentation) -> bool:
    return all(not operad_normal_form(P, r) for r in P.relations)


# -- morphisms -------------------------------------------------------------------

@dataclass(frozen=True)
class OperadMorphism:
    source: OperadPresentation
    target: OperadPresentation
    image: dict  # source generator name -> tuple of (Term, scalar)
    name: str = ""

    def __post_init__(self):
        ar = self.target.arities()
        for g in self.source.generators:
            if g.name not in self.image:
                raise UnknownSymbol(g.name)
            for t, _ in self.image[g.name]:
                if arity(t) != g.arity or not is_wellformed(t, ar):
                    raise SizeMismatch(f"image of {g.name} has the wrong shape")
        for r in self.source.relations:
            if operad_normal_form(self.target, operad_map_combo(self, r)):
                raise ValueError(f"relation not preserved by {self.name or 'morphism'}")


def operad_map_term(phi: OperadMorphism, t: Term) -> dict:
    """Node-wise substitution of generator images; returns {Term: scalar}."""
    if isinstance(t, int):
        return {t: 1}
    if t.op not in phi.image:
        raise UnknownSymbol(t.op)
    kids = [list(operad_map_term(phi, c).items()) for c in t.children]
    out: dict = {}
    for img, c in phi.image[t.op]:
        for choice in product(*kids):
            x = c
            subs = {}
            for j, (u, y) in enumerate(choice, start=1):
                subs[j] = u
                x = x * y
            s = substitute(img, subs)
            z = out.get(s, 0) + x
            if z:
                out[s] = z
            else:
                out.pop(s, None)
    return out


def operad_map_combo(phi: OperadMorphism, combo) -> dict:
    out: dict = {}
    for t, c in (combo.items() if isinstance(combo, dict) else combo):
        for s, x in operad_map_term(phi, t).items():
            z = out.get(s, 0) + c * x
            if z:
                out[s] = z
            else:
                out.pop(s, None)
    return out


def identity_morphism(P: OperadPresentation) -> OperadMorphism:
    img = {g.name: ((Node(g.name, tuple(range(1, g.arity + 1))), P.ring.one),)
           for g in P.generators}
    return OperadMorphism(P, P, img, f"id_{P.name}")


def builtin_morphism(name: str, ring: RingSpec = QQ) -> OperadMorphism:
    """Ass->Com (mu to nu) or Lie->Ass (bracket to commutator)."""
    if name == "Ass->Com":
        return OperadMorphism(builtin_operad("Ass", ring), builtin_operad("Com", ring),
                              {"mu": ((Node("nu", (1, 2)), ring.one),)}, name)
    if name == "Lie->Ass":
        mu = Node("mu", (1, 2))
        return OperadMorphism(builtin_operad("Lie", ring), builtin_operad("Ass", ring),
                              {"mu": ((mu, ring.one), (act_permutation(mu, (2, 1)), -ring.one))},
                              name)
    raise UnknownOperad(name)
