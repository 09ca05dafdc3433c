"""The geometric tangent structure on presented algebras.

T X adds a generator ``s+g`` for each generator g of X, with the Leibniz
images of X's relations. Iterated tangents use the symbols d, d', d'', ...;
T_n uses d1..dn. All structure maps are written as morphisms of algebras, so
they point the opposite way to the tangent-category arrows they represent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactnum import Matrix, RowSpace, kernel_basis
from .operad import OperadMorphism, UnsupportedOperad
from .opalg import (DEFAULT_BOUND, AlgebraMorphism, PresentedAlgebra, StructureConstantAlgebra,
                    algebra_pushout, check_morphism, identity, induce_algebra, restrict_algebra,
                    to_presented)
from .report import AxiomReport
from .rewrite import buchberger_com, format_poly, index, letter, padd, MonomialOrder

SYMBOLS = ("d", "d'", "d''", "d'''", "d''''")


class NotSection(ValueError):
    pass


# -- formal derivations -------------------------------------------------------------

def leibniz(f: dict, values: Sequence[dict], mul, commutative: bool) -> dict:
    """Extend generator values to f by the Leibniz rule; ``mul`` multiplies polys."""
    out: dict = {}
    for m, c in f.items():
        for p, ch in enumerate(m):
            v = values[index(ch)]
            if not v:
                continue
            term = mul(mul({m[:p]: 1}, v), {m[p + 1:]: 1})
            out = padd(out, term, c)
    return out


def _shift_mul(commutative: bool):
    def mul(f, g):
        out: dict = {}
        for a, x in f.items():
            for b, y in g.items():
                m = "".join(sorted(a + b)) if commutative else a + b
                z = out.get(m, 0) + x * y
                if z:
                    out[m] = z
                else:
                    out.pop(m, None)
        return out
    return mul


def _tree_derivatives(tree, shift: int):
    if isinstance(tree, int):
        return [tree + shift]
    a, b = tree
    return [(x, b) for x in _tree_derivatives(a, shift)] + \
        [(a, y) for y in _tree_derivatives(b, shift)]


# -- the tangent functor ------------------------------------------------------------

def tangent_n(X: PresentedAlgebra, symbols: Sequence[str]) -> PresentedAlgebra:
    """X with a block of generators ``s+g`` per symbol s, and Leibniz relations."""
    symbols = tuple(symbols)
    cache = X.__dict__.setdefault("_tangents", {})
    if symbols in cache:
        return cache[symbols]
    n = X.ngens
    gens = list(X.generators) + [s + g for s in symbols for g in X.generators]
    mul = _shift_mul(X.kind == "Com")
    trees = X.lie_relations if X.kind == "Lie" else None
    if trees:
        raw = list(X.relations[:len(X.relations) - len(trees)])
        new_trees = list(trees)
        for k in range(1, len(symbols) + 1):
            for combo in trees:
                new_trees.append([(t, c) for tree, c in combo
                                  for t in _tree_derivatives(tree, k * n)])
    else:
        raw, new_trees = list(X.relations), None
    base_raw = list(raw)
    for k in range(1, len(symbols) + 1):
        vals = [{letter(k * n + i): X.ring.one} for i in range(n)]
        for r in base_raw:
            raw.append(leibniz(r, vals, mul, X.kind == "Com"))
    depth = getattr(X, "tdepth", 0)
    name = f"T{'' if symbols == (SYMBOLS[depth],) else len(symbols)}({X.name})" \
        if len(symbols) > 1 or symbols[0] in SYMBOLS else f"T[{','.join(symbols)}]({X.name})"
    TX = PresentedAlgebra(X.kind, gens, raw, X.degrees * (len(symbols) + 1), X.ring,
                          new_trees, name)
    TX.tdepth = depth + 1
    TX.tbase = X
    TX.tsymbols = symbols
    cache[symbols] = TX
    return TX


def next_symbol(X: PresentedAlgebra) -> str:
    """Next differential symbol, skipping any that would clash with a generator name."""
    names = set(X.generators)
    k = getattr(X, "tdepth", 0)
    while any(SYMBOLS[k] + g in names for g in X.generators):
        k += 1
    return SYMBOLS[k]


def T(X: PresentedAlgebra) -> PresentedAlgebra:
    return tangent_n(X, (next_symbol(X),))


def Tn(X: PresentedAlgebra, n: int) -> PresentedAlgebra:
    if n == 1:
        return T(X)
    return tangent_n(X, tuple(f"d{k}" for k in range(1, n + 1)))


def formal_d(Y: PresentedAlgebra, block: int, f: dict) -> dict:
    """d_block applied to a poly over Y's generators, as a poly over T-generators."""
    n = Y.ngens
    vals = [{letter(block * n + i): Y.ring.one} for i in range(n)]
    return leibniz(f, vals, _shift_mul(Y.kind == "Com"), Y.kind == "Com")


def tangent_map(f: AlgebraMorphism, n: int = 1) -> AlgebraMorphism:
    """T_n f: g -> f(g), d_k g -> d_k f(g)."""
    X, Y = f.source, f.target
    TX, TY = Tn(X, n), Tn(Y, n)
    imgs = {}
    for i, g in enumerate(X.generators):
        imgs[g] = f.images[g]
        for k in range(1, n + 1):
            imgs[TX.generators[k * X.ngens + i]] = formal_d(Y, k, f.images[g])
    return AlgebraMorphism(TX, TY, imgs, f"T{f.name}")


def _blockmap(src: PresentedAlgebra, tgt: PresentedAlgebra, n: int, rules: dict,
              name: str) -> AlgebraMorphism:
    one = src.ring.one
    imgs = {}
    for j, g in enumerate(src.generators):
        b, i = divmod(j, n) if n else (0, 0)
        v: dict = {}
        for b2, c in rules.get(b, ()):
            v = padd(v, {letter(b2 * n + i): one * c})
        imgs[g] = v
    return AlgebraMorphism(src, tgt, imgs, name)


def p_map(X):
    return _blockmap(X, T(X), X.ngens, {0: [(0, 1)]}, f"p_{X.name}")


def z_map(X):
    return _blockmap(T(X), X, X.ngens, {0: [(0, 1)]}, f"z_{X.name}")


def s_map(X):
    return _blockmap(T(X), Tn(X, 2), X.ngens, {0: [(0, 1)], 1: [(1, 1), (2, 1)]},
                     f"s_{X.name}")


def pi_map(X, k: int, n: int = 2):
    return _blockmap(T(X), Tn(X, n), X.ngens, {0: [(0, 1)], 1: [(k, 1)]}, f"pi{k}_{X.name}")


def l_map(X):
    return _blockmap(T(T(X)), T(X), X.ngens, {0: [(0, 1)], 3: [(1, 1)]}, f"l_{X.name}")


def c_map(X):
    return _blockmap(T(T(X)), T(T(X)), X.ngens,
                     {0: [(0, 1)], 1: [(2, 1)], 2: [(1, 1)], 3: [(3, 1)]}, f"c_{X.name}")


def n_map(X):
    return _blockmap(T(X), T(X), X.ngens, {0: [(0, 1)], 1: [(1, -1)]}, f"n_{X.name}")


def copair(fs: Sequence[AlgebraMorphism], X: PresentedAlgebra) -> AlgebraMorphism:
    """[f_1..f_n]: T_n X -> W from maps f_k: T X -> W agreeing on X."""
    n = X.ngens
    TnX = Tn(X, len(fs))
    imgs = {}
    for i, g in enumerate(X.generators):
        imgs[g] = fs[0].images[g]
        for k, f in enumerate(fs, start=1):
            imgs[TnX.generators[k * n + i]] = f.images[T(X).generators[n + i]]
    return AlgebraMorphism(TnX, fs[0].target, imgs, "[" + ",".join(f.name for f in fs) + "]")


# -- public constructors -------------------------------------------------------------

@dataclass
class GeoTangentAlgebra:
    base: PresentedAlgebra
    result: PresentedAlgebra
    copies: int = 1

    def dims(self, bound: int) -> list[int]:
        return self.result.dims(bound)


def geo_tangent(A: PresentedAlgebra, n: int = 1, bound: int = DEFAULT_BOUND) -> GeoTangentAlgebra:
    TA = Tn(A, n)
    TA.require(bound)
    return GeoTangentAlgebra(A, TA, n)


_NAT = {"p": p_map, "z": z_map, "s": s_map, "l": l_map, "c": c_map, "n": n_map}


def geo_nat(name: str, A: PresentedAlgebra, bound: int = DEFAULT_BOUND) -> AlgebraMorphism:
    h = _NAT[name](A)
    rep = check_morphism(h, bound)
    if not rep.passed:
        raise ValueError(f"{h.name} is not a morphism: {rep.failures()[0]}")
    return h


# -- axioms -----------------------------------------------------------------------------

def _differs(f: AlgebraMorphism, g: AlgebraMorphism, bound: int) -> str | None:
    return f.differs(g, bound)


def _naturality(f: AlgebraMorphism, bound: int) -> str | None:
    X, Y = f.source, f.target
    Tf = tangent_map(f)
    TTf = tangent_map(Tf)
    checks = [
        ("p", f.then(p_map(Y)), p_map(X).then(Tf)),
        ("z", Tf.then(z_map(Y)), z_map(X).then(f)),
        ("s", Tf.then(s_map(Y)), s_map(X).then(tangent_map(f, 2))),
        ("l", TTf.then(l_map(Y)), l_map(X).then(Tf)),
        ("c", TTf.then(c_map(Y)), c_map(X).then(TTf)),
        ("n", Tf.then(n_map(Y)), n_map(X).then(Tf)),
    ]
    for nm, u, v in checks:
        w = _differs(u, v, bound)
        if w:
            return f"{nm} along {f.name}: {w}"
    return None


def lift_comparison(A: PresentedAlgebra, bound: int = DEFAULT_BOUND):
    """The pushout of T(p) and z, and its comparison map onto T_2 A."""
    TA, TTA, T2A = T(A), T(T(A)), Tn(A, 2)
    P = algebra_pushout(tangent_map(p_map(A)), z_map(A), f"pushout({A.name})")
    n = A.ngens
    one = A.ring.one
    imgs = {}
    # T^2 A block images: x -> x, dx -> d2 x, d'x -> 0, d'dx -> d1 x
    rules = {0: 0, 1: 2, 3: 1}
    for j, g in enumerate(TTA.generators):
        b, i = divmod(j, n)
        imgs[P.generators[j]] = {letter(rules[b] * n + i): one} if b in rules else {}
    for i in range(n):
        imgs[P.generators[4 * n + i]] = {letter(i): one}
    return P, AlgebraMorphism(P, T2A, imgs, "lift_comparison")


def check_geo_tangent_axioms(A: PresentedAlgebra, bound: int = DEFAULT_BOUND,
                             s_override: AlgebraMorphism | None = None) -> AxiomReport:
    """Tangent-structure equations in the category of algebras, up to ``bound``.

    ``s_override`` substitutes a different sum map (used to test the checker).
    """
    rep = AxiomReport(f"geometric tangent structure on {A.name} (bound {bound})")
    TA, TTA, T2A = T(A), T(T(A)), Tn(A, 2)
    pA, zA, lA, cA, nA = p_map(A), z_map(A), l_map(A), c_map(A), n_map(A)
    sA = s_override or s_map(A)
    pi1, pi2 = pi_map(A, 1), pi_map(A, 2)
    for h in (pA, zA, sA, lA, cA, nA, pi1, pi2):
        r = check_morphism(h, bound)
        rep.add(f"morphism {h.name}", r.passed,
                None if r.passed else r.failures()[0].witness, counted=False)
    idA, idT, idTT = identity(A), identity(TA), identity(TTA)

    def eq(name, *pairs):
        w = None
        for u, v in pairs:
            w = w or _differs(u, v, bound)
        rep.add(name, w is None, w)

    eq("zero_section", (pA.then(zA), idA))
    eq("additive_projection", (pA.then(sA), pA.then(pi1)), (pA.then(pi1), pA.then(pi2)))
    zp = zA.then(pA)
    eq("additive_unit", (sA.then(copair([idT, zp], A)), idT),
       (sA.then(copair([zp, idT], A)), idT))
    q1, q2, q3 = (pi_map(A, k, 3) for k in (1, 2, 3))
    left = sA.then(copair([sA.then(copair([q1, q2], A)), q3], A))
    right = sA.then(copair([q1, sA.then(copair([q2, q3], A))], A))
    eq("additive_assoc", (left, right))
    eq("additive_comm", (sA.then(copair([pi2, pi1], A)), sA))
    w = None
    for f in (idA, pA):
        w = w or _naturality(f, bound)
    rep.add("naturality", w is None, w)
    Tp, pT = tangent_map(pA), p_map(TA)
    eq("lift_projection", (Tp.then(lA), zA.then(pA)), (pT.then(lA), zA.then(pA)))
    eq("flip_involution", (cA.then(cA), idTT))
    eq("flip_projection", (Tp.then(cA), pT), (pT.then(cA), Tp))
    lT, cT, Tl, Tc = l_map(TA), c_map(TA), tangent_map(lA), tangent_map(cA)
    eq("flip_lift", (cA.then(lA), lA), (cT.then(Tl).then(cA), Tc.then(lT)))
    eq("lift_coassoc", (lT.then(lA), Tl.then(lA)))
    eq("yang_baxter", (cT.then(Tc).then(cT), Tc.then(cT).then(Tc)))
    P, v = lift_comparison(A, bound)
    res = is_iso_truncated(v, bound)
    rep.add("lift_universality", res.iso, str(res))
    eq("negation", (sA.then(copair([idT, nA], A)), zA.then(pA)), (pA.then(nA), pA))
    # T_2 A against the pushout of p along itself
    Q = algebra_pushout(pA, pA, f"{TA.name}+{TA.name}")
    same = Q.dims(bound) == T2A.dims(bound)
    rep.add("T2_pushout_selftest", same, f"{Q.dims(bound)} vs {T2A.dims(bound)}", counted=False)
    return rep


def sabotaged_sum(A: PresentedAlgebra) -> AlgebraMorphism:
    """s with d a -> d1 a only."""
    return _blockmap(T(A), Tn(A, 2), A.ngens, {0: [(0, 1)], 1: [(1, 1)]}, "s_bad")


# -- truncated isomorphism test ------------------------------------------------------

@dataclass
class IsoResult:
    kind: str  # "Iso", "SurjNotInj" or "NotSurj"
    bound: int
    witness: str | None = None
    degree: int | None = None
    source_dims: list = field(default_factory=list)
    target_dims: list = field(default_factory=list)
    ranks: list = field(default_factory=list)
    witness_poly: dict | None = None

    @property
    def iso(self) -> bool:
        return self.kind == "Iso"

    def __str__(self):
        s = f"{self.kind}({self.bound})"
        if self.witness:
            s += f" degree {self.degree}: {self.witness}"
        return s


def _filtration_basis(A: PresentedAlgebra, bound: int) -> list:
    """Per degree d, a list of elements spanning F_d / F_{d-1}."""
    nb = A.normal_basis(bound)
    return [[({m: A.ring.one} if isinstance(m, str) else m) for m in lst] for lst in nb]


def is_iso_truncated(h: AlgebraMorphism, bound: int = DEFAULT_BOUND) -> IsoResult:
    """Compare the degree filtrations F_0 <= .. <= F_bound of source and target."""
    S, Tg = h.source, h.target
    sb, tb = _filtration_basis(S, bound), _filtration_basis(Tg, bound)
    src: list = []
    tgt: list = []
    ranks, not_surj, not_inj = [], None, None
    for d in range(bound + 1):
        src.extend(sb[d])
        tgt.extend(tb[d])
        images = [h.apply(f, bound) for f in src]
        keys = sorted({k for im in images for k in im}, key=Tg.order.key)
        M = Matrix.from_rows([[im.get(k, 0) for im in images] for k in keys], ring=S.ring,
                             cols=len(images))
        r = M.rank() if keys else 0
        ranks.append(r)
        if not_surj is None and r < len(tgt):
            span = RowSpace()
            for im in images:
                span.add(im)
            miss = next(f for f in tgt if not span.contains(f))
            not_surj = (d, miss)
        if not_inj is None and r < len(src):
            v = kernel_basis(M)[0] if keys else (S.ring.one,) + (S.ring.zero,) * (len(src) - 1)
            poly: dict = {}
            for c, f in zip(v, src):
                if c:
                    poly = padd(poly, f, c)
            not_inj = (d, poly)
    graded = [ranks[0]] + [ranks[d] - ranks[d - 1] for d in range(1, len(ranks))]
    res = IsoResult("Iso", bound, source_dims=[len(x) for x in sb],
                    target_dims=[len(x) for x in tb], ranks=graded)
    if not_surj is not None:
        res.kind, res.degree, res.witness_poly = "NotSurj", not_surj[0], not_surj[1]
        res.witness = Tg.fmt(not_surj[1])
    elif not_inj is not None:
        res.kind, res.degree, res.witness_poly = "SurjNotInj", not_inj[0], not_inj[1]
        res.witness = S.fmt(not_inj[1])
    return res


# -- Kähler differentials ---------------------------------------------------------------

@dataclass
class KahlerModule:
    base: PresentedAlgebra
    generators: list
    relations: list
    dims: list
    oracle_dims: list | None = None

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def agrees(self) -> bool | None:
        return None if self.oracle_dims is None else self.oracle_dims == self.dims


def d_degree(m: str, n: int) -> int:
    return sum(1 for ch in m if index(ch) >= n)


def kahler_module(A: PresentedAlgebra, bound: int = DEFAULT_BOUND,
                  oracle: bool = True) -> KahlerModule:
    TA = T(A)
    n = A.ngens
    mons = TA.require(bound).normal_monomials(bound)
    dims = [sum(1 for m in lst if d_degree(m, n) == 1) for lst in mons]
    rels = TA.relations[len(A.relations):]
    km = KahlerModule(A, list(TA.generators[n:]), [TA.fmt(r) for r in rels], dims)
    if oracle and A.kind == "Com":
        km.oracle_dims = kahler_oracle_dims(A, bound)
    return km


def kahler_oracle_dims(A: PresentedAlgebra, bound: int) -> list[int]:
    """dims of I/I^2 for I = ker(A (x) A -> A), per degree."""
    n = A.ngens
    order = MonomialOrder(True, A.degrees * 2)
    shift = list(range(n, 2 * n))
    from .opalg import remap
    J = list(A.relations) + [remap(r, shift, True) for r in A.relations]
    I = [{letter(i): A.ring.one, letter(n + i): -A.ring.one} for i in range(n)]
    I2 = [_mul_com(order, f, g) for k, f in enumerate(I) for g in I[k:]]
    modI = buchberger_com(J + I, order).dims(bound)
    modI2 = buchberger_com(J + I2, order).dims(bound)
    return [a - b for a, b in zip(modI2, modI)]


def _mul_com(order, f, g):
    from .rewrite import pmul
    return pmul(order, f, g)


# -- derivations and vector fields -------------------------------------------------------

@dataclass
class Derivation:
    algebra: object
    values: dict  # generator or basis name -> element (poly or vector)

    def __call__(self, f: dict) -> dict:
        A = self.algebra
        vals = [self.values[g] for g in A.generators]
        return A.nf(leibniz(f, vals, A.mul, A.kind == "Com"))

    def fmt(self) -> str:
        A = self.algebra
        if isinstance(A, StructureConstantAlgebra):
            from .opalg import format_vector
            return ", ".join(f"{b}->{format_vector(A, v)}" for b, v in self.values.items())
        return ", ".join(f"{g}->{A.fmt(v)}" for g, v in self.values.items())

    def __repr__(self):
        return f"Derivation({self.fmt()})"


def _candidate_values(A: PresentedAlgebra, bound: int) -> list:
    out = []
    for lst in A.normal_basis(bound):
        for m in lst:
            out.append({m: A.ring.one} if isinstance(m, str) else m)
    return out


def _solve_derivations(A: PresentedAlgebra, bound: int, extra: Sequence[dict] = ()) -> list:
    """Kernel of the Leibniz constraints on generator values; ``extra`` are
    further polynomials whose derivative must vanish."""
    cands = _candidate_values(A, bound)
    n = A.ngens
    unknowns = [(g, j) for g in range(n) for j in range(len(cands))]
    constraints = list(A.relations) + list(extra)
    columns = []
    for g, j in unknowns:
        vals = [{} for _ in range(n)]
        vals[g] = cands[j]
        col: dict = {}
        for k, r in enumerate(constraints):
            v = A.nf(leibniz(r, vals, A.mul, A.kind == "Com"), bound)
            for m, c in v.items():
                col[(k, m)] = c
        columns.append(col)
    keys = sorted({k for col in columns for k in col}, key=lambda km: (km[0], A.order.key(km[1])))
    if not unknowns:
        return []
    if keys:
        M = Matrix.from_rows([[col.get(k, 0) for col in columns] for k in keys], ring=A.ring,
                             cols=len(unknowns))
        ker = kernel_basis(M)
    else:
        ker = [tuple(A.ring.one if i == j else A.ring.zero for i in range(len(unknowns)))
               for j in range(len(unknowns))]
    out = []
    for v in ker:
        values = {g: {} for g in A.generators}
        for (g, j), c in zip(unknowns, v):
            if c:
                values[A.generators[g]] = padd(values[A.generators[g]], cands[j], c)
        out.append(Derivation(A, values))
    return out


def _sc_derivations(A: StructureConstantAlgebra) -> list:
    n = A.dim
    ring = A.ring
    basis = [{i: ring.one} for i in range(n)]
    from .opalg import apply_op
    rows: dict = {}
    # unknown delta[j][i]: coefficient of e_j in delta(e_i); column index i*n + j
    for op in A.operad.generators:
        for tup in __import__("itertools").product(range(n), repeat=op.arity):
            prod_ = apply_op(A, op.name, [basis[i] for i in tup])
            for i in range(n):
                for j in range(n):
                    col = i * n + j
                    # delta(op(e..)) contribution
                    cont: dict = {}
                    c = prod_.get(i)
                    if c:
                        cont = {j: c}
                    for pos, t in enumerate(tup):
                        if t == i:
                            args = [basis[x] for x in tup]
                            args[pos] = basis[j]
                            cont = padd(cont, apply_op(A, op.name, args), -1)
                    for k, v in cont.items():
                        key = (op.name, tup, k)
                        rows.setdefault(key, {})
                        rows[key][col] = rows[key].get(col, 0) + v
    if A.unit is not None:
        for i in range(n):
            for j in range(n):
                c = A.unit.get(i)
                if c:
                    rows.setdefault(("unit", j), {})
                    rows[("unit", j)][i * n + j] = c
    if n == 0:
        return []
    keys = [k for k in rows if any(rows[k].values())]
    if keys:
        M = Matrix.from_rows([[rows[k].get(c, 0) for c in range(n * n)] for k in keys],
                             ring=ring, cols=n * n)
        ker = kernel_basis(M)
    else:
        ker = [tuple(ring.one if a == b else ring.zero for a in range(n * n))
               for b in range(n * n)]
    out = []
    for v in ker:
        values = {}
        for i in range(n):
            values[A.basis[i]] = {j: v[i * n + j] for j in range(n) if v[i * n + j]}
        out.append(Derivation(A, values))
    return out


def derivation_space(A, bound: int = DEFAULT_BOUND) -> list:
    """Basis of derivations; generator values range over normal monomials of degree <= bound."""
    if isinstance(A, StructureConstantAlgebra):
        return _sc_derivations(A)
    return _solve_derivations(A, bound)


def to_vector_field(delta: Derivation, V: PresentedAlgebra | None = None) -> AlgebraMorphism:
    """v: T A -> A with v(a) = a and v(d a) = delta(a). ``V`` may replace T A by a
    quotient with the same generators (a vertical tangent)."""
    A = delta.algebra
    V = V or T(A)
    n = A.ngens
    imgs = {}
    for i, g in enumerate(A.generators):
        imgs[g] = {letter(i): A.ring.one}
        imgs[V.generators[n + i]] = delta.values[g]
    return AlgebraMorphism(V, A, imgs, "v")


def to_derivation(v: AlgebraMorphism, A: PresentedAlgebra | None = None,
                  bound: int = DEFAULT_BOUND) -> Derivation:
    A = A or v.target
    n = A.ngens
    for i, g in enumerate(A.generators):
        if A.nf(padd(v.images[g], {letter(i): A.ring.one}, -1), bound):
            raise NotSection(f"v({g}) = {A.fmt(v.images[g])} is not {g}")
    return Derivation(A, {g: dict(v.images[v.source.generators[n + i]])
                          for i, g in enumerate(A.generators)})


def vf_deriv_bridge(direction: str, data, **kw):
    if direction == "toVectorField":
        return to_vector_field(data, kw.get("V"))
    if direction == "toDerivation":
        return to_derivation(data, kw.get("A"), kw.get("bound", DEFAULT_BOUND))
    raise ValueError(direction)


def same_derivation(a: Derivation, b: Derivation, bound: int = DEFAULT_BOUND) -> bool:
    A = a.algebra
    return all(not A.nf(padd(a.values[g], b.values[g], -1), bound) for g in A.generators)


# -- distributive laws of operad morphisms --------------------------------------------

def _as_presented(B):
    return to_presented(B) if isinstance(B, StructureConstantAlgebra) else B


def _restrict(phi: OperadMorphism, B):
    if phi.source.name == phi.target.name:
        return _as_presented(B)
    R = restrict_algebra(phi, B)
    return _as_presented(R)


def dist_law_star(phi: OperadMorphism, B, bound: int = DEFAULT_BOUND) -> AlgebraMorphism:
    """alpha^*: T^P(phi^* B) -> phi^*(T^Q B), b -> b, d b -> d b.

    The target is represented by T^Q B itself; evaluation of P-relations there
    goes through phi automatically (commutators, or forgetting commutativity).
    """
    Bp = _as_presented(B)
    src = T(_restrict(phi, B))
    tgt = T(Bp)
    if list(src.generators) != list(tgt.generators):
        raise UnsupportedOperad("restriction changed the generators")
    h = AlgebraMorphism(src, tgt, {g: {letter(i): Bp.ring.one}
                                   for i, g in enumerate(src.generators)}, "alpha*")
    check_morphism(h, bound)
    return h


def dist_law_shriek(phi: OperadMorphism, A, bound: int = DEFAULT_BOUND) -> AlgebraMorphism:
    """alpha_!: T^Q(phi_! A) -> phi_!(T^P A), a -> a, d a -> d a."""
    A = _as_presented(A)
    src = T(induce_algebra(phi, A))
    tgt = induce_algebra(phi, T(A))
    h = AlgebraMorphism(src, tgt, {g: {letter(i): A.ring.one}
                                   for i, g in enumerate(src.generators)}, "alpha!")
    check_morphism(h, bound)
    return h


def inverse_on_generators(h: AlgebraMorphism) -> AlgebraMorphism:
    """The generator-identical map in the other direction."""
    S, Tg = h.source, h.target
    return AlgebraMorphism(Tg, S, {g: {letter(i): S.ring.one}
                                   for i, g in enumerate(Tg.generators)}, f"{h.name}^-1")


__all__ = [n for n in dir() if not n.startswith("_")]
