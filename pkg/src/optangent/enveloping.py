"""The enveloping operad P^A and the enveloping algebra P^A(1).

P^A(m) is realized as the part of the coproduct A + Free_P(y_1..y_m) that is
multilinear in the y's. A symbol (mu; a_1..a_k| evaluates mu on the frozen
elements a_i followed by y_1..y_m; the absorption relations of P^A become
equalities of these values, so a basis is read off by exact row reduction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .exactnum import RowSpace
from .operad import (EnvelopingSymbol, Node, OperadPresentation, OpSymbol, Term,
                     UnsupportedOperad, arity, free_eval, term_str)
from .opalg import (DEFAULT_BOUND, AlgebraElement, PresentedAlgebra, StructureConstantAlgebra,
                    to_presented)
from .rewrite import format_poly, index, letter, padd

UNIT = "unit"  # nullary unit of the unital operads Com and Ass


@dataclass(frozen=True)
class EnvSymbol:
    """(mu; a_1..a_k| with mu of arity k + open_arity; frozen entries are A-monomials."""

    mu: Term
    frozen: tuple = ()
    open_arity: int = 0

    def label(self, A: PresentedAlgebra | None = None) -> str:
        op = "1" if self.mu == 1 or self.mu == UNIT else term_str(self.mu)
        if not self.frozen:
            return f"({op}|"
        args = ",".join(_fmt_frozen(a, A) for a in self.frozen)
        return f"({op};{args}|"

    def __str__(self):
        return self.label()


def _fmt_frozen(a: str, A) -> str:
    if A is not None and all(ord(ch) >= 0x100 for ch in a):
        return format_poly({a: 1}, A.generators)
    return a


def operation_basis(kind: str, n: int) -> list:
    """A basis of P(n) as terms, in a fixed order."""
    op = "nu" if kind == "Com" else "mu"

    def nest(labels):
        t = labels[-1]
        for j in reversed(labels[:-1]):
            t = Node(op, (j, t))
        return t
    if n == 0:
        return [UNIT] if kind in ("Com", "Ass") else []
    if n == 1:
        return [1]
    if kind == "Com":
        return [nest(list(range(1, n + 1)))]
    if kind == "Ass":
        return [nest(list(p)) for p in permutations(range(1, n + 1))]
    if kind == "Lie":
        return [nest(list(p) + [n]) for p in permutations(range(1, n))]
    raise UnsupportedOperad(kind)


def _evaluate(kind: str, mu, args: list) -> dict:
    if mu == UNIT:
        return {"": 1}
    op = "nu" if kind == "Com" else "mu"
    return free_eval(kind, mu, args, op)


@dataclass
class EnvComponent:
    arity: int
    symbols: list
    values: list
    _space: RowSpace = field(default_factory=RowSpace, repr=False)

    def coordinates(self, v: dict) -> dict:
        """Coefficients of a coproduct value in the symbol basis."""
        r = self._space.reduce(v)
        if any(not isinstance(k, tuple) for k in r):
            raise ValueError("value outside the computed span (raise the degree bound)")
        return {self.symbols[k[1]]: -c for k, c in r.items()}


class EnvelopingOperad:
    """Truncated P^A: components of arity <= n, A-content of degree <= D."""

    def __init__(self, kind: str, A: PresentedAlgebra, arity_bound: int, degree_bound: int):
        if kind not in ("Com", "Ass", "Lie"):
            raise UnsupportedOperad(kind)
        if A.kind != kind:
            raise UnsupportedOperad(f"{A.name} is a {A.kind}-algebra, not a {kind}-algebra")
        self.kind = kind
        self.A = A
        self.n = arity_bound
        self.D = degree_bound
        na = A.ngens
        # coproduct A + Free(y_1..y_n); y_i is generator na + i - 1
        self.C = PresentedAlgebra(kind, list(A.generators) + [f"y{i}" for i in range(1, arity_bound + 1)],
                                  A.relations,
                                  A.degrees + (1,) * arity_bound, A.ring,
                                  None, f"{A.name}+y")
        self._ny = na
        self.frozen_basis = self._frozen_basis()
        self.components = [self._component(m) for m in range(arity_bound + 1)]

    def _frozen_basis(self) -> list:
        """A-basis elements of positive degree: (label, poly) pairs."""
        A = self.A
        out = []
        for d, lst in enumerate(A.normal_basis(self.D)):
            for f in lst if d else ():
                if isinstance(f, str):
                    out.append((f, {f: A.ring.one}, d))
                else:
                    out.append((format_poly(f, A.generators), f, d))
        return out

    def y(self, i: int) -> dict:
        return {letter(self._ny + i - 1): self.A.ring.one}

    def value(self, s: EnvSymbol, frozen_polys: list | None = None) -> dict:
        polys = frozen_polys if frozen_polys is not None else \
            [self._frozen_poly(a) for a in s.frozen]
        args = polys + [self.y(i) for i in range(1, s.open_arity + 1)]
        raw = _evaluate(self.kind, s.mu, args)
        return self.C.nf(raw, self.D + s.open_arity)

    def _frozen_poly(self, a) -> dict:
        if isinstance(a, str):
            for lab, f, _ in self.frozen_basis:
                if lab == a:
                    return f
            if a in self.A.generators:
                return {letter(self.A.gen_index(a)): self.A.ring.one}
            if any(ord(ch) < 0x100 for ch in a):
                raise ValueError(f"unknown frozen element {a!r}")
            return {a: self.A.ring.one}
        return dict(a)

    def candidates(self, m: int):
        kmax = m + 1 if self.kind in ("Com", "Ass") else max(self.D, 1)
        if m == 0 and self.kind != "Lie":
            yield EnvSymbol(UNIT, (), 0)
        for k in range(0, kmax + 1):
            if k + m == 0:
                continue
            ops = operation_basis(self.kind, k + m)
            for mu in ops:
                for combo in product(self.frozen_basis, repeat=k):
                    deg = sum(d for _, _, d in combo)
                    if deg > self.D:
                        continue
                    if self.kind == "Com" and any(combo[i][0] > combo[i + 1][0]
                                                  for i in range(k - 1)):
                        continue
                    yield EnvSymbol(mu, tuple(lab for lab, _, _ in combo), m)

    def _component(self, m: int) -> EnvComponent:
        comp = EnvComponent(m, [], [])
        plain = RowSpace()
        for s in self.candidates(m):
            v = self.value(s)
            if not plain.add(v):
                continue
            tagged = dict(v)
            tagged[("#", len(comp.symbols))] = self.A.ring.one
            comp._space.add(tagged)
            comp.symbols.append(s)
            comp.values.append(v)
        return comp

    def basis(self, m: int) -> list:
        return list(self.components[m].symbols)

    def dims(self) -> list[int]:
        return [len(c.symbols) for c in self.components]

    def normal_form(self, s: EnvSymbol | dict) -> dict:
        """Coordinates of a symbol (or combination) in the canonical basis."""
        items = s.items() if isinstance(s, dict) else [(s, 1)]
        out: dict = {}
        for sym, c in items:
            comp = self.components[sym.open_arity]
            for b, x in comp.coordinates(self.value(sym)).items():
                y = out.get(b, 0) + c * x
                if y:
                    out[b] = y
                else:
                    out.pop(b, None)
        return out

    def compose_values(self, f: dict, i: int, g: dict, m_g: int) -> dict:
        """Substitute value g (arity m_g) for y_i in f, shifting later y's."""
        ny = self._ny
        out: dict = {}
        for mono, c in f.items():
            pos = [k for k, ch in enumerate(mono) if index(ch) == ny + i - 1]
            if len(pos) != 1:
                raise ValueError("value is not multilinear in the open inputs")
            p = pos[0]

            def shift(ch, by):
                j = index(ch)
                return letter(j + by) if j >= ny + i else ch
            head = "".join(shift(ch, m_g - 1) for ch in mono[:p])
            tail = "".join(shift(ch, m_g - 1) for ch in mono[p + 1:])
            for gm, d in g.items():
                gm2 = "".join(letter(index(ch) + i - 1) if index(ch) >= ny else ch for ch in gm)
                new = head + gm2 + tail
                if self.kind == "Com":
                    new = "".join(sorted(new))
                y = out.get(new, 0) + c * d
                if y:
                    out[new] = y
                else:
                    out.pop(new, None)
        return out

    def presentation(self) -> OperadPresentation:
        gens = tuple(OpSymbol(s.label(self.A), m) for m in range(self.n + 1)
                     for s in self.components[m].symbols)
        return OperadPresentation(f"{self.kind}^{self.A.name}", gens, (), EnvelopingSymbol,
                                  self.A.ring, self)


def _as_presented(A) -> PresentedAlgebra:
    return to_presented(A) if isinstance(A, StructureConstantAlgebra) else A


def enveloping_operad(P, A, arity_bound: int = 1,
                      degree_bound: int = DEFAULT_BOUND) -> OperadPresentation:
    kind = P if isinstance(P, str) else P.name
    return EnvelopingOperad(kind, _as_presented(A), arity_bound, degree_bound).presentation()


def env_symbol_normal_form(s: EnvSymbol, P, A, degree_bound: int = DEFAULT_BOUND) -> dict:
    kind = P if isinstance(P, str) else P.name
    env = EnvelopingOperad(kind, _as_presented(A), max(1, s.open_arity), degree_bound)
    return env.normal_form(s)


def enveloping_algebra(P, A, bound: int = DEFAULT_BOUND) -> StructureConstantAlgebra:
    """P^A(1) with composition as product and (1| as unit.

    For an infinite-dimensional A the tables are truncated at the degree bound
    and the result is returned uncertified.
    """
    from .operad import builtin_operad
    kind = P if isinstance(P, str) else P.name
    A = _as_presented(A)
    finite = _is_finite(A, bound)
    if finite and kind == "Ass":
        # products of symbols carry frozen content on both sides
        top = max((d for d, n in enumerate(A.dims(bound)) if n), default=0)
        bound = max(bound, 2 * top)
    env = EnvelopingOperad(kind, A, 1, bound)
    comp = env.components[1]
    table = {}
    for i, fi in enumerate(comp.values):
        for j, fj in enumerate(comp.values):
            v = env.C.nf(env.compose_values(fi, 1, fj, 1), bound + 1)
            try:
                coords = comp.coordinates(v)
            except ValueError:
                if finite:
                    raise
                continue
            if coords:
                table[(i, j)] = {comp.symbols.index(b): c for b, c in coords.items()}
    ident = env.normal_form(EnvSymbol(1, (), 1))
    unit = {comp.symbols.index(b): c for b, c in ident.items()}
    Ass = builtin_operad("Ass", A.ring)
    names = [s.label(A) for s in comp.symbols]
    out = StructureConstantAlgebra(Ass, names, {"mu": table}, unit, A.ring,
                                   f"Env_{kind}({A.name})", certify=finite)
    out.symbols = comp.symbols
    return out


def _is_finite(A: PresentedAlgebra, bound: int) -> bool:
    d = A.dims(bound + max(A.degrees, default=1))
    return not any(d[bound + 1:]) and (A.kind != "Lie" or True)


__all__ = ["EnvSymbol", "EnvelopingOperad", "enveloping_operad", "env_symbol_normal_form",
           "enveloping_algebra", "operation_basis", "UNIT"]
