"""Algebras over the builtin operads: structure constants and presentations.

Elements of a structure-constant algebra are sparse vectors ``{basis index:
scalar}``. Elements of a presented algebra are polynomials ``{monomial:
scalar}`` in the string encoding of :mod:`optangent.rewrite`; Lie algebras are
handled inside their enveloping algebra, brackets expanding to commutators.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .exactnum import QQ, RingSpec, RowSpace
from .operad import (Node, OperadMorphism, OperadPresentation, Term, UnsupportedOperad,
                     arity, builtin_operad, compose, free_eval, operad_map_combo)
from .report import AxiomReport
from .rewrite import (MonomialOrder, NormalFormIncomplete, RewriteSystem, buchberger_com,
                      complete_ass, format_monomial, format_poly, index, letter, padd, pmul,
                      pscale)

DEFAULT_BOUND = 3
SLACK = 2


class ArityMismatch(ValueError):
    pass


class CertificationError(ValueError):
    pass


class OperadMismatch(ValueError):
    pass


# -- sparse vectors -------------------------------------------------------------

def apply_op(A: "StructureConstantAlgebra", op: str, vecs: Sequence[dict]) -> dict:
    table = A.tables.get(op, {})
    out: dict = {}
    for combo in product(*(list(v.items()) for v in vecs)):
        key = tuple(i for i, _ in combo)
        val = table.get(key)
        if not val:
            continue
        c = 1
        for _, x in combo:
            c = c * x
        for k, y in val.items():
            z = out.get(k, 0) + c * y
            if z:
                out[k] = z
            else:
                out.pop(k, None)
    return out


def vmul(A: "StructureConstantAlgebra", u: dict, v: dict) -> dict:
    return apply_op(A, A.operad.product, [u, v])


def _vec(x) -> dict:
    if isinstance(x, AlgebraElement):
        return x.terms
    return dict(x)


class StructureConstantAlgebra:
    """Finite-dimensional algebra given by tables on a basis.

    ``tables[op][(i1, ..., im)]`` is the sparse vector op(e_i1, ..., e_im);
    missing entries are zero. Construction certifies every operad relation on
    all basis tuples unless ``certify=False``.
    """

    def __init__(self, operad: OperadPresentation, basis: Sequence[str], tables: dict,
                 unit: dict | None = None, ring: RingSpec | None = None, name: str = "A",
                 certify: bool = True):
        self.operad = operad
        self.ring = ring or operad.ring
        self.basis = tuple(basis)
        self.tables = {op: {tuple(k): {i: self.ring(c) for i, c in v.items() if c}
                            for k, v in t.items()} for op, t in tables.items()}
        for t in self.tables.values():
            for k in [k for k, v in t.items() if not v]:
                del t[k]
        self.unit = None if unit is None else {i: self.ring(c) for i, c in unit.items() if c}
        self.name = name
        self.certified = False
        if certify:
            rep = self.certification()
            if not rep.passed:
                raise CertificationError(f"{name}: {rep.failures()[0].name} "
                                         f"[{rep.failures()[0].witness}]")
            self.certified = True

    @property
    def dim(self) -> int:
        return len(self.basis)

    def idx(self, name: str) -> int:
        return self.basis.index(name)

    def vec(self, *names) -> dict:
        out: dict = {}
        for nm in names:
            out = padd(out, {self.idx(nm): self.ring.one})
        return out

    def element(self, v) -> "AlgebraElement":
        return AlgebraElement(self, _vec(v))

    def mul(self, u, v) -> dict:
        return vmul(self, _vec(u), _vec(v))

    def certification(self) -> AxiomReport:
        rep = AxiomReport(f"certify {self.name}")
        n = self.dim
        basis_vecs = [{i: self.ring.one} for i in range(n)]
        for k, rel in enumerate(self.operad.relations):
            m = arity(rel[0][0])
            bad = None
            for tup in product(range(n), repeat=m):
                args = [basis_vecs[i] for i in tup]
                tot: dict = {}
                for t, c in rel:
                    tot = padd(tot, eval_structure_map(self, t, args), c)
                if tot:
                    bad = "(" + ",".join(self.basis[i] for i in tup) + ")"
                    break
            rep.add(f"relation_{k}", bad is None, bad)
        if self.unit is not None:
            ok = True
            for op in self.operad.generators:
                if op.arity != 2:
                    continue
                for i in range(n):
                    e = basis_vecs[i]
                    if apply_op(self, op.name, [self.unit, e]) != e or \
                            apply_op(self, op.name, [e, self.unit]) != e:
                        ok = False
            rep.add("unit", ok, "unit law")
        return rep

    def __repr__(self):
        return f"StructureConstantAlgebra({self.name}, {self.operad.name}, dim={self.dim})"


def eval_structure_map(A: StructureConstantAlgebra, t: Term, args: Sequence) -> dict:
    if len(args) != arity(t):
        raise ArityMismatch(f"term of arity {arity(t)} given {len(args)} arguments")
    vecs = [_vec(a) for a in args]

    def go(s):
        if isinstance(s, int):
            return vecs[s - 1]
        return apply_op(A, s.op, [go(c) for c in s.children])
    return go(t)


def sc_algebra(operad: str | OperadPresentation, basis: Sequence[str], products: dict,
               unit=None, ring: RingSpec = QQ, name: str = "A",
               certify: bool = True) -> StructureConstantAlgebra:
    """Build from a product table keyed by basis names.

    ``products[(a, b)]`` is a dict ``{name: coeff}`` (or a single name); absent
    pairs multiply to zero. ``unit`` is a basis name or a dict.
    """
    P = builtin_operad(operad, ring) if isinstance(operad, str) else operad
    ix = {b: i for i, b in enumerate(basis)}
    table = {}
    for (a, b), v in products.items():
        if isinstance(v, str):
            v = {v: 1}
        table[(ix[a], ix[b])] = {ix[k]: c for k, c in v.items()}
    if isinstance(unit, str):
        unit = {ix[unit]: 1}
    elif isinstance(unit, dict):
        unit = {ix[k]: c for k, c in unit.items()}
    return StructureConstantAlgebra(P, basis, {P.product: table}, unit, ring, name, certify)


def truncated_polynomial(n: int, ring: RingSpec = QQ, var: str = "x") -> StructureConstantAlgebra:
    """R[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    names = ["1"] + [var if k == 1 else f"{var}{k}" for k in range(1, n)]
    prods = {(names[i], names[j]): names[i + j] for i in range(n) for j in range(n) if i + j < n}
    return sc_algebra("Com", names, prods, "1", ring, f"{ring}[{var}]/({var}^{n})")


def upper_triangular(ring: RingSpec = QQ) -> StructureConstantAlgebra:
    prods = {("e11", "e11"): "e11", ("e11", "e12"): "e12", ("e12", "e22"): "e12",
             ("e22", "e22"): "e22"}
    return sc_algebra("Ass", ["e11", "e12", "e22"], prods, {"e11": 1, "e22": 1}, ring, "UT2")


def nonabelian_lie(ring: RingSpec = QQ) -> StructureConstantAlgebra:
    """The 2-dim Lie algebra [x, y] = x."""
    prods = {("x", "y"): {"x": 1}, ("y", "x"): {"x": -1}}
    return sc_algebra("Lie", ["x", "y"], prods, None, ring, "aff1")


def heisenberg(ring: RingSpec = QQ) -> StructureConstantAlgebra:
    prods = {("x", "y"): {"z": 1}, ("y", "x"): {"z": -1}}
    return sc_algebra("Lie", ["x", "y", "z"], prods, None, ring, "heis3")


def zero_algebra(operad: str = "Com", ring: RingSpec = QQ) -> StructureConstantAlgebra:
    P = builtin_operad(operad, ring)
    unit = {} if operad != "Lie" else None
    return StructureConstantAlgebra(P, (), {P.product: {}}, unit, ring, "0")


# -- presented algebras ---------------------------------------------------------

def lie_expand(tree) -> dict:
    """Bracket tree (generator index or pair) to its commutator expansion."""
    if isinstance(tree, int):
        return {letter(tree): 1}
    a, b = lie_expand(tree[0]), lie_expand(tree[1])
    return padd(pmul(_WORDS, a, b), pmul(_WORDS, b, a), -1)


_WORDS = MonomialOrder(False, (1,))


class PresentedAlgebra:
    """Generators and relations over Com, Ass or Lie.

    Com and Ass presentations are unital (quotients of polynomial and word
    algebras); a Lie presentation is computed inside its enveloping algebra.
    """

    def __init__(self, kind: str, generators: Sequence[str], relations: Iterable = (),
                 degrees: Sequence[int] | None = None, ring: RingSpec = QQ,
                 lie_relations: Sequence | None = None, name: str = ""):
        if kind not in ("Com", "Ass", "Lie"):
            raise UnsupportedOperad(kind)
        self.kind = kind
        self.ring = ring
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(self.generators)
        self.order = MonomialOrder(kind == "Com", self.degrees)
        self.lie_relations = tuple(tuple(r) for r in lie_relations) if lie_relations else None
        rels = [self._canon(r) for r in relations]
        if self.lie_relations:
            for combo in self.lie_relations:
                f: dict = {}
                for tree, c in combo:
                    f = padd(f, lie_expand(tree), ring(c))
                rels.append(f)
        self.relations = tuple(r for r in rels if r)
        self.name = name or "A"
        self._sys: RewriteSystem | None = None
        self._index = {g: i for i, g in enumerate(self.generators)}

    def _canon(self, f: dict) -> dict:
        if isinstance(f, AlgebraElement):
            f = f.terms
        out: dict = {}
        for m, c in f.items():
            if self.kind == "Com":
                m = "".join(sorted(m))
            y = out.get(m, 0) + self.ring(c)
            if y:
                out[m] = y
            else:
                out.pop(m, None)
        return out

    @property
    def operad(self) -> OperadPresentation:
        return builtin_operad(self.kind, self.ring)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def gen_index(self, name: str) -> int:
        return self._index[name]

    @property
    def homogeneous(self) -> bool:
        deg = self.order.deg
        return all(len({deg(m) for m in r}) == 1 for r in self.relations)

    # -- normal forms --
    def system(self, bound: int | None = None) -> RewriteSystem:
        if self.kind == "Com":
            if self._sys is None:
                self._sys = buchberger_com(self.relations, self.order, None)
            return self._sys
        cap = (DEFAULT_BOUND if bound is None else bound) + SLACK
        s = self._sys
        if s is not None and (s.complete or (s.bound or 0) >= cap):
            return s
        self._sys = complete_ass(self.relations, self.order, cap)
        return self._sys

    def require(self, bound: int | None = None) -> RewriteSystem:
        s = self.system(bound)
        if not s.complete and not self.homogeneous:
            raise NormalFormIncomplete(
                f"{self.name}: completion stopped at degree {s.bound} with pending overlaps")
        return s

    def nf(self, f, bound: int | None = None) -> dict:
        if isinstance(f, AlgebraElement):
            f = f.terms
        return self.require(bound).normal_form(f)

    def is_zero(self, f, bound: int | None = None) -> bool:
        return not self.nf(f, bound)

    def mul(self, f: dict, g: dict) -> dict:
        return pmul(self.order, f, g)

    def bracket(self, a, b) -> "AlgebraElement":
        f, g = _terms(a), _terms(b)
        return AlgebraElement(self, padd(self.mul(f, g), self.mul(g, f), -1))

    def gen(self, name: str) -> "AlgebraElement":
        return AlgebraElement(self, {letter(self._index[name]): self.ring.one})

    def gens(self) -> list:
        return [self.gen(g) for g in self.generators]

    def one(self) -> "AlgebraElement":
        if self.kind == "Lie":
            raise ValueError("Lie algebras have no unit")
        return AlgebraElement(self, {"": self.ring.one})

    def scalar(self, c) -> dict:
        c = self.ring(c)
        return {"": c} if c else {}

    def element(self, f) -> "AlgebraElement":
        return AlgebraElement(self, self._canon(f))

    def normal_basis(self, bound: int) -> list:
        """Normal monomials by degree (for Lie: a basis of spanning brackets)."""
        if self.kind == "Lie":
            return self._lie_basis(bound)
        return self.require(bound).normal_monomials(bound)

    def _lie_basis(self, bound: int) -> list:
        s = self.require(bound)
        out = [[] for _ in range(bound + 1)]
        n = self.ngens
        w = self.degrees
        # right-normed brackets span; count along the degree filtration
        by_deg: dict = {}
        for i in range(n):
            if w[i] <= bound:
                by_deg.setdefault(w[i], []).append({letter(i): self.ring.one})
        for d in range(1, bound + 1):
            for f in by_deg.get(d, []):
                for i in range(n):
                    if d + w[i] <= bound:
                        g = {letter(i): self.ring.one}
                        by_deg.setdefault(d + w[i], []).append(
                            padd(self.mul(g, f), self.mul(f, g), -1))
        space = RowSpace()
        for d in range(1, bound + 1):
            for f in by_deg.get(d, []):
                v = s.normal_form(f)
                if space.add(v):
                    out[d].append(v)
        return out

    def dims(self, bound: int) -> list[int]:
        return [len(x) for x in self.normal_basis(bound)]

    def fmt(self, f) -> str:
        return format_poly(_terms(f), self.generators, self.order)

    def __repr__(self):
        return f"PresentedAlgebra({self.name}, {self.kind}, gens={list(self.generators)})"


def dims_by_degree(A: PresentedAlgebra, bound: int) -> list[int]:
    return A.dims(bound)


def _terms(x) -> dict:
    return x.terms if isinstance(x, AlgebraElement) else x


class AlgebraElement:
    """Scalar combination of basis vectors or monomials of ``alg``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    def _coerce(self, o) -> dict:
        if isinstance(o, AlgebraElement):
            return o.terms
        if isinstance(self.alg, PresentedAlgebra):
            return self.alg.scalar(o)
        if self.alg.unit is None:
            raise TypeError("no unit to coerce a scalar")
        return pscale(self.alg.unit, self.alg.ring(o))

    def __add__(self, o):
        return AlgebraElement(self.alg, padd(self.terms, self._coerce(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return AlgebraElement(self.alg, padd(self.terms, self._coerce(o), -1))

    def __rsub__(self, o):
        return AlgebraElement(self.alg, padd(self._coerce(o), self.terms, -1))

    def __neg__(self):
        return AlgebraElement(self.alg, pscale(self.terms, -1))

    def __mul__(self, o):
        if isinstance(o, AlgebraElement):
            if isinstance(self.alg, PresentedAlgebra):
                return AlgebraElement(self.alg, self.alg.mul(self.terms, o.terms))
            return AlgebraElement(self.alg, vmul(self.alg, self.terms, o.terms))
        return AlgebraElement(self.alg, pscale(self.terms, self.alg.ring(o)))

    def __rmul__(self, o):
        return AlgebraElement(self.alg, pscale(self.terms, self.alg.ring(o)))

    def __pow__(self, k: int):
        out = AlgebraElement(self.alg, self._coerce(1))
        for _ in range(k):
            out = out * self
        return out

    def normal_form(self, bound: int | None = None) -> "AlgebraElement":
        if isinstance(self.alg, PresentedAlgebra):
            return AlgebraElement(self.alg, self.alg.nf(self.terms, bound))
        return self

    def __eq__(self, o):
        if not isinstance(o, AlgebraElement):
            o = AlgebraElement(self.alg, self._coerce(o))
        diff = padd(self.terms, o.terms, -1)
        if isinstance(self.alg, PresentedAlgebra):
            return self.alg.is_zero(diff)
        return not diff

    def __hash__(self):
        return id(self)

    def __str__(self):
        if isinstance(self.alg, PresentedAlgebra):
            return self.alg.fmt(self.terms)
        return format_vector(self.alg, self.terms)

    __repr__ = __str__


def format_vector(A: StructureConstantAlgebra, v: dict) -> str:
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = v[k]
        parts.append(A.basis[k] if c == 1 else f"{c}*{A.basis[k]}")
    return " + ".join(parts)


# -- morphisms --------------------------------------------------------------------

def remap(f: dict, mapping: Sequence[int], commutative: bool) -> dict:
    """Rename generator i to mapping[i] inside every monomial."""
    out: dict = {}
    for m, c in f.items():
        nm = "".join(letter(mapping[index(ch)]) for ch in m)
        if commutative:
            nm = "".join(sorted(nm))
        y = out.get(nm, 0) + c
        if y:
            out[nm] = y
        else:
            out.pop(nm, None)
    return out


class AlgebraMorphism:
    """Generator map between presented algebras; ``images[g]`` is a target poly."""

    def __init__(self, source: PresentedAlgebra, target: PresentedAlgebra, images: dict,
                 name: str = ""):
        self.source = source
        self.target = target
        missing = [g for g in source.generators if g not in images]
        if missing:
            raise ValueError(f"no image for {missing}")
        self.images = {g: target._canon(_terms(images[g])) for g in source.generators}
        self._img = [self.images[g] for g in source.generators]
        self.name = name
        self.certificate: int | None = None
        self._cache: dict = {}

    def apply(self, f, bound: int | None = None) -> dict:
        """Image of a source polynomial, in target normal form."""
        f = _terms(f)
        T = self.target
        s = T.require(bound)
        out: dict = {}
        for m, c in f.items():
            img = self._cache.get(m)
            if img is None:
                img = {"": T.ring.one}
                for ch in m:
                    img = s.normal_form(T.mul(img, self._img[index(ch)]))
                    if not img:
                        break
                self._cache[m] = img
            out = padd(out, img, c)
        return out

    def __call__(self, x) -> AlgebraElement:
        return AlgebraElement(self.target, self.apply(x))

    def then(self, other: "AlgebraMorphism", name: str = "") -> "AlgebraMorphism":
        """Composite in Alg_P: first self, then other."""
        if other.source is not self.target:
            raise ValueError("composable morphisms must share the middle algebra")
        return AlgebraMorphism(self.source, other.target,
                               {g: other.apply(self.images[g]) for g in self.source.generators},
                               name or f"{self.name};{other.name}")

    def differs(self, other: "AlgebraMorphism", bound: int | None = None) -> str | None:
        """First generator on which the two morphisms disagree, or None."""
        T = self.target
        for g in self.source.generators:
            diff = T.nf(padd(self.images[g], other.images[g], -1), bound)
            if diff:
                return f"{g}: {T.fmt(T.nf(self.images[g], bound))} vs " \
                       f"{T.fmt(T.nf(other.images[g], bound))}"
        return None

    def __repr__(self):
        imgs = ", ".join(f"{g}->{self.target.fmt(v)}" for g, v in self.images.items())
        return f"{self.name or 'h'}: {imgs}"


def identity(A: PresentedAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, {g: {letter(i): A.ring.one} for i, g in enumerate(A.generators)},
                           f"id_{A.name}")


def check_morphism(h: AlgebraMorphism, bound: int = DEFAULT_BOUND) -> AxiomReport:
    """Normalize the image of every source relation in the target."""
    rep = AxiomReport(f"morphism {h.name}")
    S = h.source
    for k, r in enumerate(S.relations):
        img = h.apply(r, bound)
        rep.add(f"relation_{k}", not img, f"{S.fmt(r)} -> {h.target.fmt(img)}")
    if rep.passed:
        h.certificate = bound
    return rep


class SCMorphism:
    """Linear map between structure-constant algebras: images of basis vectors."""

    def __init__(self, source: StructureConstantAlgebra, target: StructureConstantAlgebra,
                 columns: Sequence[dict], name: str = ""):
        if len(columns) != source.dim:
            raise ValueError("one column per source basis vector")
        self.source, self.target = source, target
        self.columns = [dict(c) for c in columns]
        self.name = name

    def apply(self, v) -> dict:
        out: dict = {}
        for i, c in _vec(v).items():
            out = padd(out, self.columns[i], c)
        return out

    def __call__(self, v) -> AlgebraElement:
        return AlgebraElement(self.target, self.apply(v))

    def then(self, other: "SCMorphism") -> "SCMorphism":
        return SCMorphism(self.source, other.target, [other.apply(c) for c in self.columns],
                          f"{self.name};{other.name}")

    def __eq__(self, other):
        return isinstance(other, SCMorphism) and self.columns == other.columns

    def __hash__(self):
        return id(self)

    def is_multiplicative(self) -> tuple[bool, str | None]:
        A, B = self.source, self.target
        basis = [{i: A.ring.one} for i in range(A.dim)]
        for op in A.operad.generators:
            for tup in product(range(A.dim), repeat=op.arity):
                lhs = self.apply(apply_op(A, op.name, [basis[i] for i in tup]))
                rhs = apply_op(B, op.name, [self.columns[i] for i in tup])
                if lhs != rhs:
                    return False, f"{op.name}(" + ",".join(A.basis[i] for i in tup) + ")"
        if A.unit is not None and B.unit is not None and self.apply(A.unit) != B.unit:
            return False, "unit"
        return True, None


def check_sc_morphism(h: SCMorphism) -> AxiomReport:
    ok, w = h.is_multiplicative()
    return AxiomReport(f"morphism {h.name}").add("multiplicative", ok, w)


def sc_identity(A: StructureConstantAlgebra) -> SCMorphism:
    return SCMorphism(A, A, [{i: A.ring.one} for i in range(A.dim)], f"id_{A.name}")


# -- semidirect products -----------------------------------------------------------

def semidirect_tangent(A: StructureConstantAlgebra, n: int = 1,
                       certify: bool | None = None) -> StructureConstantAlgebra:
    """A x| (A x ... x A) with n copies: one-sided-linear extension of the tables.

    Block 0 carries the base; a product is nonzero only when at most one input
    lies outside block 0, and then lands in that input's block.
    """
    d = A.dim
    if n == 1:
        names = [f"({b},0)" for b in A.basis] + [f"(0,{b})" for b in A.basis]
    else:
        names = [f"{b}@{k}" for k in range(n + 1) for b in A.basis]
    tables = {}
    for op, table in A.tables.items():
        new = {}
        for key, val in table.items():
            m = len(key)
            new[key] = dict(val)
            for blk in range(1, n + 1):
                for pos in range(m):
                    k2 = list(key)
                    k2[pos] += blk * d
                    new[tuple(k2)] = {i + blk * d: c for i, c in val.items()}
        tables[op] = new
    unit = None if A.unit is None else dict(A.unit)
    cert = A.certified if certify is None else certify
    return StructureConstantAlgebra(A.operad, names, tables, unit, A.ring,
                                    f"T{'' if n == 1 else n}({A.name})", certify=cert)


# -- conversions --------------------------------------------------------------------

def to_presented(A: StructureConstantAlgebra) -> PresentedAlgebra:
    """Presentation on the basis; a basis vector equal to the unit becomes 1."""
    kind = A.operad.name
    if kind not in ("Com", "Ass", "Lie"):
        raise UnsupportedOperad(kind)
    unit_idx = None
    if A.unit is not None and len(A.unit) == 1:
        (k, c), = A.unit.items()
        if c == 1:
            unit_idx = k
    gens = [b for i, b in enumerate(A.basis) if i != unit_idx]
    pos = {}
    j = 0
    for i in range(A.dim):
        if i != unit_idx:
            pos[i] = j
            j += 1

    def img(i):
        return {"": A.ring.one} if i == unit_idx else {letter(pos[i]): A.ring.one}

    def lin(v):
        out: dict = {}
        for i, c in v.items():
            out = padd(out, img(i), c)
        return out
    op = A.operad.product
    table = A.tables.get(op, {})
    order = MonomialOrder(kind == "Com", (1,) * len(gens))
    rels = []
    lie = []
    for i in range(A.dim):
        for j in range(A.dim):
            if i == unit_idx or j == unit_idx:
                continue
            if kind == "Com" and j < i:
                continue
            if kind == "Lie":
                if j <= i:
                    continue
                combo = [((pos[i], pos[j]), A.ring.one)]
                for k, c in table.get((i, j), {}).items():
                    combo.append((pos[k], -c))
                lie.append(combo)
                continue
            rels.append(padd(pmul(order, img(i), img(j)), lin(table.get((i, j), {})), -1))
    if A.unit is not None and unit_idx is None and kind != "Lie":
        rels.append(padd(lin(A.unit), {"": A.ring.one}, -1))
    return PresentedAlgebra(kind, gens, rels, None, A.ring, lie or None, A.name)


def to_structure_constants(A: PresentedAlgebra, bound: int = 8,
                           name: str | None = None) -> StructureConstantAlgebra:
    """Finite-dimensional presented algebra as tables on its normal monomials."""
    if A.kind == "Lie":
        return _lie_structure_constants(A, bound, name)
    s = A.require(bound)
    wmax = max(A.degrees, default=1)
    mons = s.normal_monomials(bound)
    top = max((d for d in range(bound + 1) if mons[d]), default=-1)
    if top + wmax > bound or any(mons[d] for d in range(top + 1, bound + 1)):
        raise ValueError(f"{A.name} is not visibly finite-dimensional below degree {bound}")
    if top >= 0 and top + wmax <= bound:
        extra = s.normal_monomials(top + wmax)
        if any(extra[d] for d in range(top + 1, top + wmax + 1)):
            raise ValueError("not finite-dimensional")
    basis = [m for lst in mons for m in lst]
    ix = {m: i for i, m in enumerate(basis)}
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            prod_ = s.normal_form(A.mul({a: 1}, {b: 1}))
            if prod_:
                table[(i, j)] = {ix[m]: c for m, c in prod_.items()}
    names = [format_monomial(m, A.generators) for m in basis]
    P = builtin_operad(A.kind, A.ring)
    unit = {ix[""]: 1} if "" in ix else {}
    return StructureConstantAlgebra(P, names, {P.product: table}, unit, A.ring,
                                    name or A.name)


def _lie_structure_constants(A: PresentedAlgebra, bound: int,
                             name: str | None) -> StructureConstantAlgebra:
    """Bracket table on the spanning-bracket basis of a finite Lie presentation."""
    layers = A.normal_basis(bound)
    top = max((d for d in range(bound + 1) if layers[d]), default=0)
    if top and top + max(A.degrees) > bound:
        raise ValueError(f"{A.name} is not visibly finite-dimensional below degree {bound}")
    basis = [v for lst in layers for v in lst]
    space = RowSpace()
    for k, v in enumerate(basis):
        tagged = dict(v)
        tagged[("#", k)] = A.ring.one
        space.add(tagged)
    s = A.require(bound)
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            br = s.normal_form(padd(A.mul(a, b), A.mul(b, a), -1))
            r = space.reduce(br)
            if any(not isinstance(k, tuple) for k in r):
                raise ValueError("bracket leaves the computed span")
            coords = {k[1]: -c for k, c in r.items()}
            if coords:
                table[(i, j)] = coords

    def label(v):
        t = format_poly(v, A.generators, A.order)
        return t if len(v) == 1 and " " not in t else f"[{t}]"
    P = builtin_operad("Lie", A.ring)
    return StructureConstantAlgebra(P, [label(v) for v in basis], {P.product: table}, None,
                                    A.ring, name or A.name)


# -- restriction and induction ----------------------------------------------------

def restrict_algebra(phi: OperadMorphism, B):
    """phi^* B: the same carrier read through phi."""
    src, tgt = phi.source, phi.target
    if isinstance(B, StructureConstantAlgebra):
        if B.operad.name != tgt.name:
            raise OperadMismatch(f"{B.name} is over {B.operad.name}, not {tgt.name}")
        basis = [{i: B.ring.one} for i in range(B.dim)]
        tables = {}
        for g in src.generators:
            t = {}
            combo = phi.image[g.name]
            for tup in product(range(B.dim), repeat=g.arity):
                v: dict = {}
                for term, c in combo:
                    v = padd(v, eval_structure_map(B, term, [basis[i] for i in tup]), c)
                if v:
                    t[tup] = v
            tables[g.name] = t
        unit = B.unit if src.name != "Lie" else None
        return StructureConstantAlgebra(src, B.basis, tables, unit, B.ring, B.name,
                                        certify=B.certified)
    if src.name == tgt.name:
        return B
    if (src.name, tgt.name) == ("Ass", "Com"):
        n = B.ngens
        comm = [{letter(i) + letter(j): B.ring.one, letter(j) + letter(i): -B.ring.one}
                for i in range(n) for j in range(i + 1, n)]
        return PresentedAlgebra("Ass", B.generators, list(B.relations) + comm, B.degrees,
                                B.ring, None, B.name)
    raise UnsupportedOperad(f"restriction {src.name}<-{tgt.name} of a presented algebra")


def induce_algebra(phi: OperadMorphism, A) -> PresentedAlgebra:
    """phi_! A on A's generators; relations pushed along phi."""
    if isinstance(A, StructureConstantAlgebra):
        A = to_presented(A)
    src, tgt = phi.source, phi.target
    if A.kind != src.name:
        raise OperadMismatch(f"{A.name} is over {A.kind}, not {src.name}")
    if tgt.name not in ("Com", "Ass", "Lie"):
        raise UnsupportedOperad(tgt.name)
    if src.name == tgt.name:
        return A
    # relations are stored as evaluations in the free Ass algebra, which is where
    # both builtin morphisms land before the target's own identifications
    return PresentedAlgebra(tgt.name, A.generators, A.relations, A.degrees, A.ring, None,
                            f"{phi.name or 'ind'}({A.name})")


# -- pushouts -------------------------------------------------------------------------

def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "~"
    return name


def algebra_pushout(f: AlgebraMorphism, g: AlgebraMorphism, name: str = "") -> PresentedAlgebra:
    """B +_A C; the result carries inclusions ``inl`` and ``inr``."""
    if f.source is not g.source:
        raise ValueError("pushout needs a common source")
    A, B, C = f.source, f.target, g.target
    if B.kind != C.kind:
        raise OperadMismatch(f"{B.kind} vs {C.kind}")
    taken = set(B.generators)
    cnames = []
    for c in C.generators:
        c2 = _fresh(c, taken)
        taken.add(c2)
        cnames.append(c2)
    nb = B.ngens
    shift = [nb + i for i in range(C.ngens)]
    comm = B.kind == "Com"
    rels = list(B.relations) + [remap(r, shift, comm) for r in C.relations]
    for a in A.generators:
        rels.append(padd(f.images[a], remap(g.images[a], shift, comm), -1))
    P = PresentedAlgebra(B.kind, list(B.generators) + cnames, rels,
                         B.degrees + C.degrees, B.ring, None, name or f"{B.name}+{C.name}")
    P.inl = AlgebraMorphism(B, P, {b: {letter(i): B.ring.one}
                                   for i, b in enumerate(B.generators)}, "inl")
    P.inr = AlgebraMorphism(C, P, {c: {letter(nb + i): B.ring.one}
                                   for i, c in enumerate(C.generators)}, "inr")
    return P


# -- free algebras and the monad multiplication -----------------------------------

def free_add(acc: dict, key, c) -> None:
    y = acc.get(key, 0) + c
    if y:
        acc[key] = y
    else:
        acc.pop(key, None)


def monad_flatten(P: OperadPresentation, nested) -> dict:
    """gamma_P: S_P S_P M -> S_P M.

    ``nested`` is a list of ``(coeff, term, [inner, ...])`` where each inner
    element is a dict ``{(term, letters): coeff}``. Returns such a dict.
    """
    out: dict = {}
    for c, outer, inner in nested:
        if len(inner) != arity(outer):
            raise ArityMismatch("outer term arity differs from the number of inner elements")
        for choice in product(*(list(e.items()) for e in inner)):
            coeff = c
            terms, letters = [], []
            for (t, args), x in choice:
                coeff = coeff * x
                terms.append(t)
                letters.extend(args)
            free_add(out, (compose(outer, terms), tuple(letters)), coeff)
    return out


def free_normal_form(P: OperadPresentation, e: dict, alphabet: Sequence) -> dict:
    """Evaluate a free-algebra element into polynomials on ``alphabet``."""
    pos = {a: i for i, a in enumerate(alphabet)}
    out: dict = {}
    for (t, args), c in e.items():
        polys = [{letter(pos[a]): 1} for a in args]
        for m, x in free_eval(P.name, t, polys, P.product).items():
            free_add(out, m, c * x)
    return out


def free_map_operad(phi: OperadMorphism, e: dict) -> dict:
    """phi_M: S_P M -> S_Q M on formal elements."""
    out: dict = {}
    for (t, args), c in e.items():
        for s, x in operad_map_combo(phi, {t: 1}).items():
            free_add(out, (s, args), c * x)
    return out


__all__ = [n for n in dir() if not n.startswith("_")] + ["Node"]
