"""Algebras under A: vertical tangents, relative derivations, modules and bundles.

An algebra over the enveloping operad P^A is handled as a morphism beta: A -> B.
A differential bundle over A is stored in algebra form: q: A -> E, z_q: E -> A,
s_q: E -> E_2 and the lift l_q: T E -> E.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .enveloping import EnvelopingOperad, _evaluate, enveloping_algebra
from .exactnum import Matrix, kernel_basis, rank_of_vectors
from .operad import UnsupportedOperad
from .opalg import (DEFAULT_BOUND, AlgebraMorphism, PresentedAlgebra, algebra_pushout,
                    check_morphism, identity)
from .report import AxiomReport
from .rewrite import index, letter, padd
from .tangent_geo import (Derivation, T, _candidate_values, _solve_derivations, formal_d,
                          is_iso_truncated, l_map, p_map, same_derivation, tangent_map,
                          to_derivation, to_vector_field, z_map)


class BundleCheckFailed(ValueError):
    pass


@dataclass
class AlgebraUnder:
    beta: AlgebraMorphism

    @property
    def base(self) -> PresentedAlgebra:
        return self.beta.source

    @property
    def algebra(self) -> PresentedAlgebra:
        return self.beta.target


def inclusion(A: PresentedAlgebra, B: PresentedAlgebra, name: str = "beta") -> AlgebraMorphism:
    """The map sending each generator of A to the same-named generator of B."""
    return AlgebraMorphism(A, B, {g: {letter(B.gen_index(g)): B.ring.one} for g in A.generators},
                           name)


# -- vertical tangent -----------------------------------------------------------------

def vertical_tangent(beta: AlgebraMorphism, bound: int = DEFAULT_BOUND) -> PresentedAlgebra:
    """T B modulo the ideal generated by d beta(a)."""
    B = beta.target
    TB = T(B)
    extra = [formal_d(B, 1, beta.images[a]) for a in beta.source.generators]
    V = PresentedAlgebra(B.kind, TB.generators, list(TB.relations) + extra, TB.degrees,
                         B.ring, None, f"T_{beta.name or 'beta'}({B.name})")
    V.require(bound)
    return V


def relative_derivation_space(beta: AlgebraMorphism, bound: int = DEFAULT_BOUND) -> list:
    """Derivations of B killing beta(a) for every generator a."""
    return _solve_derivations(beta.target, bound, [beta.images[a]
                                                   for a in beta.source.generators])


def section_space(V: PresentedAlgebra, B: PresentedAlgebra, bound: int = DEFAULT_BOUND) -> list:
    """Basis of morphisms v: V -> B with v(b) = b, solved on the d-generators.

    V has B's generators followed by their d-copies, and relations linear in the
    d-copies, so the conditions are linear in the unknown images.
    """
    n = B.ngens
    cands = _candidate_values(B, bound)
    unknowns = [(g, j) for g in range(n) for j in range(len(cands))]
    if not unknowns:
        return []
    base = {V.generators[i]: {letter(i): B.ring.one} for i in range(n)}
    zero = dict(base)
    for i in range(n):
        zero[V.generators[n + i]] = {}
    h0 = AlgebraMorphism(V, B, zero)
    offset = [h0.apply(r, bound) for r in V.relations]
    columns = []
    for g, j in unknowns:
        imgs = dict(zero)
        imgs[V.generators[n + g]] = cands[j]
        h = AlgebraMorphism(V, B, imgs)
        col = {}
        for k, r in enumerate(V.relations):
            for m, c in padd(h.apply(r, bound), offset[k], -1).items():
                col[(k, m)] = c
        columns.append(col)
    if any(offset):
        raise ValueError("relations of V are not linear in the d-generators")
    keys = sorted({k for col in columns for k in col}, key=lambda km: (km[0], B.order.key(km[1])))
    if keys:
        M = Matrix.from_rows([[col.get(k, 0) for col in columns] for k in keys], ring=B.ring,
                             cols=len(unknowns))
        ker = kernel_basis(M)
    else:
        ker = [tuple(B.ring.one if a == b else B.ring.zero for a in range(len(unknowns)))
               for b in range(len(unknowns))]
    out = []
    for v in ker:
        imgs = dict(zero)
        for (g, j), c in zip(unknowns, v):
            if c:
                key = V.generators[n + g]
                imgs[key] = padd(imgs[key], cands[j], c)
        out.append(AlgebraMorphism(V, B, imgs, "v"))
    return out


def same_span(ds: Sequence[Derivation], es: Sequence[Derivation], bound: int) -> bool:
    """Equal spans of derivations, compared through generator values."""
    if not ds and not es:
        return True
    A = (ds or es)[0].algebra
    keys = set()
    vecs = []
    for d in list(ds) + list(es):
        vec = {}
        for g in A.generators:
            for m, c in A.nf(d.values[g], bound).items():
                vec[(g, m)] = c
                keys.add((g, m))
        vecs.append(vec)
    keys = sorted(keys, key=repr)
    rows = [[v.get(k, 0) for k in keys] for v in vecs]
    r_all = rank_of_vectors(A.ring, rows, len(keys))
    r_d = rank_of_vectors(A.ring, rows[:len(ds)], len(keys))
    r_e = rank_of_vectors(A.ring, rows[len(ds):], len(keys))
    return r_all == r_d == r_e


# -- the slice equivalence ------------------------------------------------------------

def env_route_tangent(beta: AlgebraMorphism, bound: int = DEFAULT_BOUND) -> PresentedAlgebra:
    """Tangent of B as a P^A-algebra, from the operations of P^A in arities 0 and 1.

    Nullary operations (constants beta(a)) have zero differential; every unary
    operation s commutes with d.
    """
    A, B = beta.source, beta.target
    if B.kind == "Lie":
        raise UnsupportedOperad("slice comparison covers Com and Ass")
    env = EnvelopingOperad(B.kind, A, 1, bound)
    TB = T(B)
    n = B.ngens
    rels = list(B.relations)
    ones = [{letter(i): B.ring.one} for i in range(n)]
    dvals = [{letter(n + i): B.ring.one} for i in range(n)]
    rels += [formal_d(B, 1, r) for r in B.relations]

    def frozen(sym):
        return [beta.apply(env._frozen_poly(a), bound) for a in sym.frozen]

    for sym in env.basis(0):
        rels.append(formal_d(B, 1, _evaluate(B.kind, sym.mu, frozen(sym))))
    for sym in env.basis(1):
        fr = frozen(sym)
        for i in range(n):
            val = _evaluate(B.kind, sym.mu, fr + [ones[i]])
            rels.append(padd(formal_d(B, 1, val), _evaluate(B.kind, sym.mu, fr + [dvals[i]]), -1))
    R = PresentedAlgebra(B.kind, TB.generators, rels, TB.degrees, B.ring, None,
                         f"T^env({B.name})")
    R.require(bound)
    return R


def check_slice_equivalence(P, A: PresentedAlgebra, under, bound: int = DEFAULT_BOUND) -> AxiomReport:
    beta = under.beta if isinstance(under, AlgebraUnder) else under
    kind = P if isinstance(P, str) else P.name
    if kind not in ("Com", "Ass"):
        raise UnsupportedOperad(kind)
    if beta.source is not A and beta.source.generators != A.generators:
        raise ValueError("beta must start at A")
    rep = AxiomReport(f"slice equivalence over {A.name} (bound {bound})")
    R = env_route_tangent(beta, bound)
    V = vertical_tangent(beta, bound)
    dr, dv = R.dims(bound), V.dims(bound)
    rep.add("graded_dims", dr == dv, f"{dr} vs {dv}")
    one = beta.target.ring.one
    f = AlgebraMorphism(R, V, {g: {letter(i): one} for i, g in enumerate(R.generators)}, "i->ii")
    g = AlgebraMorphism(V, R, {x: {letter(i): one} for i, x in enumerate(V.generators)}, "ii->i")
    cf, cg = check_morphism(f, bound), check_morphism(g, bound)
    rep.add("map_env_to_vertical", cf.passed, cf.failures()[0].witness if not cf.passed else None)
    rep.add("map_vertical_to_env", cg.passed, cg.failures()[0].witness if not cg.passed else None)
    w = f.then(g).differs(identity(R), bound) or g.then(f).differs(identity(V), bound)
    rep.add("mutually_inverse", w is None, w)
    res = is_iso_truncated(f, bound)
    rep.add("iso_truncated", res.iso, str(res))
    return rep


# -- modules, free algebras under A, and differential bundles --------------------------

@dataclass
class OperadicModule:
    """Module over A: generators and relations of module degree one.

    Relations are polynomials over A's generators followed by the module
    generators, each monomial containing exactly one module generator.
    """

    base: PresentedAlgebra
    generators: list
    relations: list = field(default_factory=list)
    degrees: list | None = None

    def __post_init__(self):
        n = self.base.ngens
        for r in self.relations:
            for m in r:
                if sum(1 for ch in m if index(ch) >= n) != 1:
                    raise ValueError("module relations must be of degree one in the generators")

    def fmt(self) -> str:
        names = list(self.base.generators) + list(self.generators)
        from .rewrite import format_poly
        rels = "; ".join(format_poly(r, names) for r in self.relations)
        return f"module over {self.base.name}: gens {' '.join(self.generators)}; rels {rels}"


def zero_module(A: PresentedAlgebra) -> OperadicModule:
    return OperadicModule(A, [], [])


def free_module(A: PresentedAlgebra, names: Sequence[str]) -> OperadicModule:
    return OperadicModule(A, list(names), [])


def kahler_as_module(A: PresentedAlgebra) -> OperadicModule:
    """Omega A: generators d g, relations the Leibniz images of A's relations."""
    TA = T(A)
    return OperadicModule(A, list(TA.generators[A.ngens:]),
                          [dict(r) for r in TA.relations[len(A.relations):]],
                          list(A.degrees))


def free_module_algebra(A: PresentedAlgebra, M: OperadicModule) -> AlgebraUnder:
    degrees = list(A.degrees) + list(M.degrees or [1] * len(M.generators))
    E = PresentedAlgebra(A.kind, list(A.generators) + list(M.generators),
                         list(A.relations) + list(M.relations), degrees, A.ring, None,
                         f"Free_{A.name}({','.join(M.generators) or '0'})")
    return AlgebraUnder(inclusion(A, E, "q"))


@dataclass
class DifferentialBundleData:
    q: AlgebraMorphism
    z_q: AlgebraMorphism
    s_q: AlgebraMorphism
    l_q: AlgebraMorphism
    E2: PresentedAlgebra

    @property
    def base(self) -> PresentedAlgebra:
        return self.q.source

    @property
    def total(self) -> PresentedAlgebra:
        return self.q.target

    @property
    def fiber(self) -> list:
        return list(self.total.generators[self.base.ngens:])


def _copy_gen(E2: PresentedAlgebra, E: PresentedAlgebra, i: int) -> dict:
    return {letter(E.ngens + i): E.ring.one}


def bundle_from_total(A: PresentedAlgebra, E: PresentedAlgebra,
                      lift: AlgebraMorphism | None = None) -> DifferentialBundleData:
    """Canonical bundle structure on E = A + fiber generators."""
    n, N = A.ngens, E.ngens
    one = A.ring.one
    q = inclusion(A, E, "q")
    zq = AlgebraMorphism(E, A, {g: ({letter(i): one} if i < n else {})
                                for i, g in enumerate(E.generators)}, "z_q")
    E2 = algebra_pushout(q, q, f"{E.name}_2")
    sq = AlgebraMorphism(E, E2, {g: ({letter(i): one} if i < n else
                                     padd({letter(i): one}, _copy_gen(E2, E, i)))
                                 for i, g in enumerate(E.generators)}, "s_q")
    TE = T(E)
    if lift is None:
        imgs = {}
        for j, g in enumerate(TE.generators):
            # fiber coordinates are fixed by the lift's derivation, the rest vanish
            if j < n:
                imgs[g] = {letter(j): one}
            elif j >= N + n:
                imgs[g] = {letter(j - N): one}
            else:
                imgs[g] = {}
        lift = AlgebraMorphism(TE, E, imgs, "l_q")
    return DifferentialBundleData(q, zq, sq, lift, E2)


def tangent_bundle(A: PresentedAlgebra) -> DifferentialBundleData:
    return bundle_from_total(A, T(A))


def sabotage_lift(d: DifferentialBundleData) -> DifferentialBundleData:
    """The same bundle with l_q(d m) = 0 on the fiber."""
    imgs = {g: ({} if j >= d.total.ngens + d.base.ngens else v)
            for j, (g, v) in enumerate(d.l_q.images.items())}
    bad = AlgebraMorphism(d.l_q.source, d.l_q.target, imgs, "l_q_bad")
    return DifferentialBundleData(d.q, d.z_q, d.s_q, bad, d.E2)


def _copair_E2(d: DifferentialBundleData, f: AlgebraMorphism, g: AlgebraMorphism,
               name: str = "") -> AlgebraMorphism:
    """[f, g]: E_2 -> W for f, g: E -> W agreeing on A."""
    E, E2 = d.total, d.E2
    N = E.ngens
    imgs = {}
    for j, x in enumerate(E2.generators):
        src = f if j < N else g
        imgs[x] = src.images[E.generators[j % N]]
    return AlgebraMorphism(E2, f.target, imgs, name or f"[{f.name},{g.name}]")


def _copair_TE2(d: DifferentialBundleData, f: AlgebraMorphism, g: AlgebraMorphism) -> AlgebraMorphism:
    """T(E_2) -> W from f, g: T E -> W (first and second copy)."""
    E, E2 = d.total, d.E2
    TE, TE2 = T(E), T(E2)
    N = E.ngens
    imgs = {}
    for j, x in enumerate(TE2.generators):
        blk, r = divmod(j, 2 * N)
        copy, i = divmod(r, N)
        src = f if copy == 0 else g
        imgs[x] = src.images[TE.generators[blk * N + i]]
    return AlgebraMorphism(TE2, f.target, imgs, "copair")


def bundle_comparison(d: DifferentialBundleData, bound: int = DEFAULT_BOUND):
    """Pushout of T(q) and z_A, with its map to E_2 built from the lift."""
    A, E, E2 = d.base, d.total, d.E2
    P = algebra_pushout(tangent_map(d.q), z_map(A), f"pushout({E.name})")
    first = d.l_q.then(E2.inl)
    second = z_map(E).then(E2.inr)
    v_T = tangent_map(d.s_q).then(_copair_TE2(d, first, second))
    imgs = dict(v_T.images)
    one = A.ring.one
    for i in range(A.ngens):
        imgs[P.generators[T(E).ngens + i]] = {letter(i): one}
    return P, AlgebraMorphism(P, E2, {g: imgs[g] for g in P.generators}, "comparison")


def bundle_check(d: DifferentialBundleData, bound: int = DEFAULT_BOUND) -> AxiomReport:
    A, E, E2 = d.base, d.total, d.E2
    rep = AxiomReport(f"differential bundle {E.name} over {A.name} (bound {bound})")
    for h in (d.q, d.z_q, d.s_q, d.l_q):
        r = check_morphism(h, bound)
        rep.add(f"morphism {h.name}", r.passed,
                None if r.passed else r.failures()[0].witness, counted=False)

    def eq(name, *pairs):
        w = None
        for u, v in pairs:
            w = w or u.differs(v, bound)
        rep.add(name, w is None, w)

    q, zq, sq, lq = d.q, d.z_q, d.s_q, d.l_q
    i1, i2 = E2.inl, E2.inr
    idE = identity(E)
    eq("zero_section", (q.then(zq), identity(A)))
    eq("additive_projection", (q.then(sq), q.then(i1)), (q.then(i1), q.then(i2)))
    zqq = zq.then(q)
    eq("additive_unit", (sq.then(_copair_E2(d, idE, zqq)), idE),
       (sq.then(_copair_E2(d, zqq, idE)), idE))
    eq("additive_comm", (sq.then(_copair_E2(d, i2, i1)), sq))
    E3 = algebra_pushout(q.then(i1), q, f"{E.name}_3")
    j1, j2, j3 = i1.then(E3.inl), i2.then(E3.inl), E3.inr
    left = sq.then(_copair_E2(d, sq.then(_copair_E2(d, j1, j2)), j3))
    right = sq.then(_copair_E2(d, j1, sq.then(_copair_E2(d, j2, j3))))
    eq("additive_assoc", (left, right))
    eq("lift_zero", (tangent_map(q).then(lq), z_map(A).then(q)))
    eq("lift_projection", (p_map(E).then(lq), zq.then(q)))
    l2 = _copair_TE2(d, lq.then(i1), lq.then(i2))
    eq("lift_additive", (lq.then(sq), tangent_map(sq).then(l2)))
    eq("lift_coassoc", (tangent_map(lq).then(lq), l_map(E).then(lq)))
    P, v = bundle_comparison(d, bound)
    res = is_iso_truncated(v, bound)
    rep.add("lift_universality", res.iso, str(res))
    return rep


def module_to_bundle(M: OperadicModule) -> DifferentialBundleData:
    E = free_module_algebra(M.base, M).algebra
    return bundle_from_total(M.base, E)


def bundle_to_module(d: DifferentialBundleData, bound: int = DEFAULT_BOUND) -> OperadicModule:
    """Fiber generators are those fixed by the lift's derivation m -> l_q(d m)."""
    A, E = d.base, d.total
    n, N = A.ngens, E.ngens
    TE = T(E)
    fiber = []
    for i in range(N):
        delta = E.nf(d.l_q.images[TE.generators[N + i]], bound)
        if i < n:
            if delta:
                raise BundleCheckFailed(f"lift derivation is nonzero on {E.generators[i]}")
            continue
        if delta != {letter(i): E.ring.one}:
            raise BundleCheckFailed(f"{E.generators[i]} is not a fiber generator")
        fiber.append(i)
    rels = []
    for r in E.relations[len(A.relations):]:
        if any(sum(1 for ch in m if index(ch) >= n) != 1 for m in r):
            raise BundleCheckFailed("a total-space relation is not linear in the fiber")
        rels.append(dict(r))
    return OperadicModule(A, [E.generators[i] for i in fiber], rels,
                          list(E.degrees[n:]))


def module_bundle_bridge(direction: str, A: PresentedAlgebra, data, bound: int = DEFAULT_BOUND):
    if direction == "toBundle":
        d = module_to_bundle(data)
        rep = bundle_check(d, bound)
        if not rep.passed:
            raise BundleCheckFailed(str(rep.failures()[0]))
        return d
    if direction == "toModule":
        rep = bundle_check(data, bound)
        if not rep.passed:
            raise BundleCheckFailed(str(rep.failures()[0]))
        return bundle_to_module(data, bound)
    raise ValueError(direction)


def same_module(M: OperadicModule, N: OperadicModule, bound: int = DEFAULT_BOUND) -> bool:
    """Same generators, and each side's relations vanish in the other's algebra."""
    if list(M.generators) != list(N.generators):
        return False
    EM = free_module_algebra(M.base, M).algebra
    EN = free_module_algebra(N.base, N).algebra
    return all(not EN.nf(r, bound) for r in M.relations) and \
        all(not EM.nf(r, bound) for r in N.relations)


__all__ = [n for n in dir() if not n.startswith("_")] + ["enveloping_algebra"]
