"""The algebraic tangent structure A -> A x| A on structure-constant algebras.

Every structure map is a block matrix whose blocks are identities of size
dim X, so one constructor serves T X, T(T X), T(T(T X)) alike. Maps compose in
diagrammatic order: ``f.then(g)`` is "first f, then g".
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .enveloping import operation_basis
from .exactnum import Matrix, rank_of_vectors
from .operad import OperadMorphism, builtin_morphism, builtin_operad, compose, free_eval
from .opalg import (SCMorphism, StructureConstantAlgebra, free_add, free_map_operad,
                    free_normal_form, monad_flatten, sc_identity, semidirect_tangent)
from .report import AxiomReport
from .rewrite import padd, pscale

_TCACHE: dict = {}


def tangent(X: StructureConstantAlgebra, n: int = 1) -> StructureConstantAlgebra:
    """T_n X, memoized so that repeated constructions share one object."""
    key = (id(X), n)
    hit = _TCACHE.get(key)
    if hit is None or hit[0] is not X:
        hit = (X, semidirect_tangent(X, n, certify=False))
        _TCACHE[key] = hit
    return hit[1]


def T2(X: StructureConstantAlgebra) -> StructureConstantAlgebra:
    return tangent(tangent(X))


def _blocks(src, tgt, n: int, nblocks: int, rule) -> SCMorphism:
    """Map sending block b of the source to sum of c * block b' of the target."""
    one = src.ring.one
    cols = []
    for b in range(nblocks):
        for i in range(n):
            col = {}
            for b2, c in rule.get(b, ()):
                col[b2 * n + i] = one * c
            cols.append(col)
    return SCMorphism(src, tgt, cols)


def p(X):
    return _named(_blocks(tangent(X), X, X.dim, 2, {0: [(0, 1)]}), "p", X)


def z(X):
    return _named(_blocks(X, tangent(X), X.dim, 1, {0: [(0, 1)]}), "z", X)


def s(X):
    return _named(_blocks(tangent(X, 2), tangent(X), X.dim, 3,
                          {0: [(0, 1)], 1: [(1, 1)], 2: [(1, 1)]}), "s", X)


def proj(X, k: int, n: int = 2):
    """pi_k: T_n X -> T X, (a; b_1..b_n) -> (a, b_k)."""
    return _named(_blocks(tangent(X, n), tangent(X), X.dim, n + 1, {0: [(0, 1)], k: [(1, 1)]}),
                  f"pi{k}", X)


def l(X):
    return _named(_blocks(tangent(X), T2(X), X.dim, 2, {0: [(0, 1)], 1: [(3, 1)]}), "l", X)


def c(X):
    return _named(_blocks(T2(X), T2(X), X.dim, 4,
                          {0: [(0, 1)], 1: [(2, 1)], 2: [(1, 1)], 3: [(3, 1)]}), "c", X)


def neg(X):
    return _named(_blocks(tangent(X), tangent(X), X.dim, 2, {0: [(0, 1)], 1: [(1, -1)]}),
                  "n", X)


def _named(h: SCMorphism, nm: str, X) -> SCMorphism:
    h.name = f"{nm}_{X.name}"
    return h


def alg_tangent_map(f: SCMorphism, n: int = 1) -> SCMorphism:
    """T_n f = f on every block."""
    A, B = f.source, f.target
    cols = []
    for b in range(n + 1):
        for col in f.columns:
            cols.append({b * B.dim + k: v for k, v in col.items()})
    return SCMorphism(tangent(A, n), tangent(B, n), cols, f"T{f.name}")


def pair(fs: Sequence[SCMorphism], X) -> SCMorphism:
    """<f_1..f_n>: S -> T_n X for maps f_k: S -> T X sharing f_k;p."""
    d = X.dim
    n = len(fs)
    cols = []
    for j in range(fs[0].source.dim):
        col = {k: v for k, v in fs[0].columns[j].items() if k < d}
        for b, f in enumerate(fs, start=1):
            for k, v in f.columns[j].items():
                if k >= d:
                    col[b * d + k - d] = v
        cols.append(col)
    return SCMorphism(fs[0].source, tangent(X, n), cols, "<" + ",".join(f.name for f in fs) + ">")


def _eq(f: SCMorphism, g: SCMorphism) -> str | None:
    """None when equal, else the first basis vector where they differ."""
    for j, (u, v) in enumerate(zip(f.columns, g.columns)):
        if u != v:
            return f"on {f.source.basis[j]}"
    return None


# -- witness -------------------------------------------------------------------------

@dataclass
class TangentWitnessAlg:
    base: StructureConstantAlgebra
    tangent: StructureConstantAlgebra
    nat: dict = field(default_factory=dict)
    tangent_n: dict = field(default_factory=dict)


def build_tangent_witness(A: StructureConstantAlgebra, n: int = 2) -> TangentWitnessAlg:
    W = TangentWitnessAlg(A, tangent(A))
    W.nat = {"p": p(A), "z": z(A), "s": s(A), "l": l(A), "c": c(A), "n": neg(A)}
    for k in range(1, n + 1):
        W.nat[f"pi{k}"] = proj(A, k, n)
    W.tangent_n = {k: tangent(A, k) for k in range(1, n + 1)}
    return W


# -- axioms ---------------------------------------------------------------------------

def _morphism_lines(rep: AxiomReport, maps: Sequence[SCMorphism]) -> None:
    for h in maps:
        ok, w = h.is_multiplicative()
        rep.add(f"morphism {h.name}", ok, w, counted=False)


def _naturality(f: SCMorphism) -> str | None:
    A, B = f.source, f.target
    Tf, T2f = alg_tangent_map(f), None
    T2f = alg_tangent_map(Tf)
    checks = [
        ("p", Tf.then(p(B)), p(A).then(f)),
        ("z", f.then(z(B)), z(A).then(Tf)),
        ("s", alg_tangent_map(f, 2).then(s(B)), s(A).then(Tf)),
        ("l", Tf.then(l(B)), l(A).then(T2f)),
        ("c", T2f.then(c(B)), c(A).then(T2f)),
        ("n", Tf.then(neg(B)), neg(A).then(Tf)),
    ]
    for nm, u, v in checks:
        w = _eq(u, v)
        if w:
            return f"{nm} along {f.name} {w}"
    return None


def lift_comparison(A: StructureConstantAlgebra) -> SCMorphism:
    """v: T_2 A -> T^2 A, (a; b1, b2) -> ((a, b2), (0, b1))."""
    return _blocks(tangent(A, 2), T2(A), A.dim, 3, {0: [(0, 1)], 1: [(3, 1)], 2: [(1, 1)]})


def _lift_universality(A: StructureConstantAlgebra) -> str | None:
    v = lift_comparison(A)
    n = A.dim
    width = 4 * n
    cols = [[col.get(k, 0) for k in range(width)] for col in v.columns]
    r = rank_of_vectors(A.ring, cols, width) if cols else 0
    if r != 3 * n:
        return f"comparison rank {r} != {3 * n}"
    # the pullback of T p against z is {((a1, b1), (a2, b2)) : a2 = 0}, of dim 3n
    for j, col in enumerate(v.columns):
        if any(2 * n <= k < 3 * n for k in col):
            return f"image leaves the pullback at {v.source.basis[j]}"
    return None


def check_alg_tangent_axioms(A: StructureConstantAlgebra) -> AxiomReport:
    rep = AxiomReport(f"algebraic tangent structure on {A.name}")
    TA, TTA = tangent(A), T2(A)
    for X in (TA, TTA, tangent(A, 2)):
        cert = X.certification()
        rep.add(f"certify {X.name}", cert.passed,
                None if cert.passed else cert.failures()[0].name, counted=False)
    pA, zA, sA, lA, cA, nA = p(A), z(A), s(A), l(A), c(A), neg(A)
    pi1, pi2 = proj(A, 1), proj(A, 2)
    _morphism_lines(rep, [pA, zA, sA, lA, cA, nA, pi1, pi2])
    idA, idT, idTT = sc_identity(A), sc_identity(TA), sc_identity(TTA)

    rep.add("zero_section", _eq(zA.then(pA), idA) is None, _eq(zA.then(pA), idA))

    w = _eq(sA.then(pA), pi1.then(pA)) or _eq(pi1.then(pA), pi2.then(pA))
    rep.add("additive_projection", w is None, w)

    unit_pair = pair([idT, pA.then(zA)], A)
    w = _eq(unit_pair.then(sA), idT) or _eq(pair([pA.then(zA), idT], A).then(sA), idT)
    rep.add("additive_unit", w is None, w)

    p1, p2, p3 = (proj(A, k, 3) for k in (1, 2, 3))
    left = pair([pair([p1, p2], A).then(sA), p3], A).then(sA)
    right = pair([p1, pair([p2, p3], A).then(sA)], A).then(sA)
    rep.add("additive_assoc", _eq(left, right) is None, _eq(left, right))

    swapped = pair([pi2, pi1], A).then(sA)
    rep.add("additive_comm", _eq(swapped, sA) is None, _eq(swapped, sA))

    w = None
    for f in (idA, zA, pA):
        w = w or _naturality(f)
    rep.add("naturality", w is None, w)

    pT, Tp = p(TA), alg_tangent_map(pA)
    w = _eq(lA.then(Tp), pA.then(zA)) or _eq(lA.then(pT), pA.then(zA))
    rep.add("lift_projection", w is None, w)

    rep.add("flip_involution", _eq(cA.then(cA), idTT) is None, _eq(cA.then(cA), idTT))

    w = _eq(cA.then(Tp), pT) or _eq(cA.then(pT), Tp)
    rep.add("flip_projection", w is None, w)

    lT, cT, Tl, Tc = l(TA), c(TA), alg_tangent_map(lA), alg_tangent_map(cA)
    w = _eq(lA.then(cA), lA) or _eq(cA.then(Tl).then(cT), lT.then(Tc))
    rep.add("flip_lift", w is None, w)

    w = _eq(lA.then(lT), lA.then(Tl))
    rep.add("lift_coassoc", w is None, w)

    w = _eq(cT.then(Tc).then(cT), Tc.then(cT).then(Tc))
    rep.add("yang_baxter", w is None, w)

    w = _lift_universality(A)
    rep.add("lift_universality", w is None, w)

    w = _eq(pair([idT, nA], A).then(sA), pA.then(zA)) or _eq(nA.then(pA), pA)
    rep.add("negation", w is None, w)
    return rep


def perturb(A: StructureConstantAlgebra, key: tuple, value: dict,
            op: str | None = None) -> StructureConstantAlgebra:
    """Copy of A with one table entry replaced; left uncertified."""
    op = op or A.operad.product
    tables = {o: dict(t) for o, t in A.tables.items()}
    tables[op][tuple(key)] = dict(value)
    return StructureConstantAlgebra(A.operad, A.basis, tables, A.unit, A.ring,
                                    f"{A.name}*", certify=False)


# -- the tangent monad and the distributive law alpha_P -------------------------------

D = "d"


def is_d(letter_name: str) -> bool:
    return letter_name.startswith(D)


def base(letter_name: str) -> str:
    return letter_name[len(D):] if is_d(letter_name) else letter_name


def alpha(e: dict) -> tuple[dict, dict]:
    """alpha_P: S_P(T M) -> T(S_P M) on formal elements over letters x, dx."""
    first: dict = {}
    second: dict = {}
    for (t, args), coeff in e.items():
        nd = sum(1 for a in args if is_d(a))
        if nd == 0:
            free_add(first, (t, args), coeff)
        elif nd == 1:
            free_add(second, (t, tuple(base(a) for a in args)), coeff)
    return first, second


def alpha_pairs(mu, pairs: Sequence[tuple]) -> tuple[dict, dict]:
    """alpha on (mu; (x_1, y_1), .., (x_m, y_m)); None entries are zero."""
    e: dict = {}
    choices = [[]]
    for x, y in pairs:
        nxt = []
        for ch in choices:
            if x is not None:
                nxt.append(ch + [x])
            if y is not None:
                nxt.append(ch + [D + y])
        choices = nxt
    for ch in choices:
        free_add(e, (mu, tuple(ch)), 1)
    return alpha(e)


def _map_letters(e: dict, f: dict) -> dict:
    """S_P(g) for g linear on letters: f[letter] = {letter': coeff}."""
    out: dict = {}
    for (t, args), coeff in e.items():
        combos = [((), coeff)]
        for a in args:
            combos = [(acc + (b,), x * y) for acc, x in combos for b, y in f[a].items()]
        for letters, x in combos:
            free_add(out, (t, letters), x)
    return out


def _tangent_letter_map(f: dict) -> dict:
    out = dict(f)
    for a, img in f.items():
        out[D + a] = {D + b: c for b, c in img.items()}
    return out


def _random_term(rng: random.Random, kind: str, n: int):
    return rng.choice(operation_basis(kind, n))


def _random_free(rng: random.Random, kind: str, letters: Sequence[str], max_arity: int,
                 terms: int = 3) -> dict:
    e: dict = {}
    for _ in range(terms):
        m = rng.randint(1, max_arity)
        t = _random_term(rng, kind, m)
        args = tuple(rng.choice(letters) for _ in range(m))
        free_add(e, (t, args), rng.randint(-3, 3) or 1)
    return e


def _nf(P, e: dict, alphabet) -> dict:
    return free_normal_form(P, e, alphabet)


def check_tangent_monad(P, M: Sequence[str] = ("x", "y"), seed: int = 0,
                        trials: int = 20) -> AxiomReport:
    """alpha_P against the monad structure, on random formal elements of degree <= 3."""
    P = builtin_operad(P) if isinstance(P, str) else P
    kind = P.name
    rng = random.Random(seed)
    TM = list(M) + [D + a for a in M]
    alphabet = TM
    rep = AxiomReport(f"tangent monad for {kind}")

    def same_pair(u, v):
        return _nf(P, padd(u[0], v[0], -1), alphabet) == {} and \
            _nf(P, padd(u[1], v[1], -1), alphabet) == {}

    # naturality in M along random integer maps
    ok, wit = True, None
    for _ in range(trials):
        f = {a: {b: rng.randint(-2, 2) for b in M} for a in M}
        f = {a: {b: x for b, x in img.items() if x} for a, img in f.items()}
        e = _random_free(rng, kind, TM, 3)
        lhs = alpha(_map_letters(e, _tangent_letter_map(f)))
        a1, a2 = alpha(e)
        rhs = (_map_letters(a1, f), _map_letters(a2, f))
        if not same_pair(lhs, rhs):
            ok, wit = False, repr(e)
            break
    rep.add("alpha_naturality", ok, wit)

    ok, wit = True, None
    for a in TM:
        first, second = alpha({(1, (a,)): 1})
        want = ({}, {(1, (base(a),)): 1}) if is_d(a) else ({(1, (a,)): 1}, {})
        if (first, second) != want:
            ok, wit = False, a
    rep.add("alpha_unit", ok, wit)

    ok, wit = True, None
    for _ in range(trials):
        m = rng.randint(1, 2)
        outer = _random_term(rng, kind, m)
        inner = [_random_free(rng, kind, TM, 2, 2) for _ in range(m)]
        nested = [(1, outer, inner)]
        lhs = alpha(monad_flatten(P, nested))
        # S_P(alpha) then alpha_{S_P M} then T(gamma)
        pairs = [alpha(e) for e in inner]
        first = monad_flatten(P, [(1, outer, [pr[0] for pr in pairs])])
        second: dict = {}
        for k in range(m):
            args = [pr[0] for pr in pairs]
            args[k] = pairs[k][1]
            for key, x in monad_flatten(P, [(1, outer, args)]).items():
                free_add(second, key, x)
        if not same_pair(lhs, (first, second)):
            ok, wit = False, f"outer {outer}"
            break
    rep.add("alpha_multiplication", ok, wit)

    for name in ("Ass->Com", "Lie->Ass"):
        phi = builtin_morphism(name, P.ring)
        if phi.source.name != kind:
            continue
        rep.extend(check_monad_square(phi, M, seed, trials))
    return rep


def check_monad_square(phi: OperadMorphism, M: Sequence[str] = ("x", "y"), seed: int = 0,
                       trials: int = 20) -> AxiomReport:
    """phi_{TM} then alpha_Q equals alpha_P then T(phi_M)."""
    rng = random.Random(seed + 1)
    TM = list(M) + [D + a for a in M]
    Q = phi.target
    rep = AxiomReport(f"square {phi.name}")
    ok, wit = True, None
    for _ in range(trials):
        e = _random_free(rng, phi.source.name, TM, 3)
        lhs = alpha(free_map_operad(phi, e))
        a1, a2 = alpha(e)
        rhs = (free_map_operad(phi, a1), free_map_operad(phi, a2))
        if _nf(Q, padd(lhs[0], rhs[0], -1), TM) or _nf(Q, padd(lhs[1], rhs[1], -1), TM):
            ok, wit = False, repr(e)
            break
    rep.add(f"square_{phi.name}", ok, wit)
    return rep


__all__ = ["tangent", "T2", "p", "z", "s", "proj", "l", "c", "neg", "alg_tangent_map", "pair",
           "TangentWitnessAlg", "build_tangent_witness", "check_alg_tangent_axioms",
           "lift_comparison", "perturb", "alpha", "alpha_pairs", "check_tangent_monad",
           "check_monad_square"]
