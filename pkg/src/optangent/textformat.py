"""Text presentations: a header of `;`-terminated statements and prefix terms.

    ring Q;
    operad Com;
    name "dualnum";
    gens x;
    degrees 1;
    rels
      (mu x x);

Terms: generator names, exact scalars (`3/2`, `-1`), `(mu a b)` (aliases `nu`,
`br`), `(+ a ...)`, `(- a b)`, `(* c e)` and the sugar `(d x)` for the generator
named `dx`. An operad presentation uses `presentation NAME;`, `ops mu/2 ...;`
and relations over input leaves `$1`, `$2`, ...
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import QQ, RingSpec, parse_ring
from .operad import (Linear, Node, OperadPresentation, OpSymbol, UnknownOperad,
                     builtin_operad)
from .opalg import PresentedAlgebra
from .rewrite import MonomialOrder, index, letter, padd, pmul

PRODUCT_ALIASES = ("mu", "nu", "br")
_SCALAR = re.compile(r"-?\d+(/\d+)?$")
_TOKEN = re.compile(r'\s+|#[^\n]*|(?P<p>[();])|"(?P<s>[^"\n]*)"|(?P<a>[^\s();"#]+)')


class PresentationSyntaxError(SyntaxError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.col = line, col


class ArityError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class Tok:
    text: str
    kind: str  # "p", "s" (quoted) or "a" (atom)
    line: int
    col: int


@dataclass
class SExpr:
    items: list
    line: int
    col: int


def tokenize(text: str) -> list[Tok]:
    out = []
    pos, line, start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PresentationSyntaxError(f"unexpected {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind:
            out.append(Tok(m.group(kind), kind, line, pos - start + 1))
        chunk = m.group(0)
        if "\n" in chunk:
            line += chunk.count("\n")
            start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    return out


def _statements(toks: list[Tok]) -> list[tuple[Tok, list]]:
    """Split into (keyword, items) statements; items are atoms or SExprs."""
    out = []
    i = 0
    while i < len(toks):
        kw = toks[i]
        if kw.kind != "a":
            raise PresentationSyntaxError(f"expected a keyword, got {kw.text!r}", kw.line, kw.col)
        i += 1
        items = []
        while True:
            if i >= len(toks):
                raise PresentationSyntaxError(f"missing ';' after {kw.text}", kw.line, kw.col)
            t = toks[i]
            if t.text == ";" and t.kind == "p":
                i += 1
                break
            item, i = _sexpr(toks, i)
            items.append(item)
        out.append((kw, items))
    return out


def _sexpr(toks: list[Tok], i: int):
    t = toks[i]
    if t.kind != "p":
        return t, i + 1
    if t.text != "(":
        raise PresentationSyntaxError(f"unexpected {t.text!r}", t.line, t.col)
    items = []
    i += 1
    while True:
        if i >= len(toks):
            raise PresentationSyntaxError("unclosed '('", t.line, t.col)
        u = toks[i]
        if u.kind == "p" and u.text == ")":
            break
        if u.kind == "p" and u.text == ";":
            raise PresentationSyntaxError("';' inside a term", u.line, u.col)
        item, i = _sexpr(toks, i)
        items.append(item)
    if not items:
        raise PresentationSyntaxError("empty term", t.line, t.col)
    return SExpr(items, t.line, t.col), i + 1


def _pos(x) -> tuple[int, int]:
    return x.line, x.col


def _head(e: SExpr) -> str:
    h = e.items[0]
    if not isinstance(h, Tok) or h.kind != "a":
        raise PresentationSyntaxError("operator expected", *_pos(h))
    return h.text


def _scalar(t, ring: RingSpec):
    if isinstance(t, Tok) and t.kind == "a" and _SCALAR.match(t.text):
        try:
            return ring(Fraction(t.text))
        except ZeroDivisionError:
            raise PresentationSyntaxError("zero denominator", *_pos(t)) from None
    return None


def _need(e: SExpr, n: int | tuple, what: str):
    k = len(e.items) - 1
    ok = k in n if isinstance(n, tuple) else k == n
    if not ok:
        raise ArityError(f"{what} takes {n} argument(s), got {k}", *_pos(e))


# -- algebra terms ----------------------------------------------------------------

class _AlgebraReader:
    def __init__(self, kind: str, gens: list, degrees, ring: RingSpec):
        self.kind, self.gens, self.ring = kind, gens, ring
        self.ix = {g: i for i, g in enumerate(gens)}
        self.order = MonomialOrder(kind == "Com", tuple(degrees))

    def gen(self, t: Tok) -> int:
        if t.kind != "a" or t.text not in self.ix:
            raise PresentationSyntaxError(f"unknown generator {t.text!r}", *_pos(t))
        return self.ix[t.text]

    def dgen(self, e: SExpr) -> int:
        _need(e, 1, _head(e))
        x = e.items[1]
        if not isinstance(x, Tok):
            raise PresentationSyntaxError("d applies to a generator", *_pos(x))
        name = _head(e) + x.text
        if name not in self.ix:
            raise PresentationSyntaxError(f"no generator {name!r} for ({_head(e)} {x.text})",
                                          *_pos(e))
        return self.ix[name]

    def poly(self, x) -> dict:
        """Com/Ass term to a polynomial (unnormalized)."""
        one = self.ring.one
        if isinstance(x, Tok):
            c = _scalar(x, self.ring)
            if c is not None:
                return {"": c} if c else {}
            return {letter(self.gen(x)): one}
        h = _head(x)
        args = x.items[1:]
        if h in PRODUCT_ALIASES:
            _need(x, 2, h)
            return pmul(self.order, self.poly(args[0]), self.poly(args[1]))
        if h == "+":
            _need(x, tuple(range(1, 1 + len(args) + 1)), "+")
            out: dict = {}
            for a in args:
                out = padd(out, self.poly(a))
            return out
        if h == "-":
            _need(x, (1, 2), "-")
            if len(args) == 1:
                return padd({}, self.poly(args[0]), -1)
            return padd(self.poly(args[0]), self.poly(args[1]), -1)
        if h == "*":
            _need(x, 2, "*")
            c = _scalar(args[0], self.ring)
            if c is None:
                raise PresentationSyntaxError("(* c e) needs a scalar c", *_pos(args[0]))
            return padd({}, self.poly(args[1]), c)
        if h.startswith("d") and set(h[1:]) <= {"'"}:
            return {letter(self.dgen(x)): one}
        raise PresentationSyntaxError(f"unknown operator {h!r}", *_pos(x))

    def lie(self, x) -> list:
        """Lie term to a list of (bracket tree, coefficient)."""
        if isinstance(x, Tok):
            if _scalar(x, self.ring) is not None:
                raise PresentationSyntaxError("Lie terms have no scalars alone", *_pos(x))
            return [(self.gen(x), self.ring.one)]
        h = _head(x)
        args = x.items[1:]
        if h in PRODUCT_ALIASES:
            _need(x, 2, h)
            return [((a, b), c * d) for a, c in self.lie(args[0]) for b, d in self.lie(args[1])]
        if h == "+":
            return [p for a in args for p in self.lie(a)]
        if h == "-":
            _need(x, (1, 2), "-")
            neg = [(t, -c) for t, c in self.lie(args[-1])]
            return neg if len(args) == 1 else self.lie(args[0]) + neg
        if h == "*":
            _need(x, 2, "*")
            c = _scalar(args[0], self.ring)
            if c is None:
                raise PresentationSyntaxError("(* c e) needs a scalar c", *_pos(args[0]))
            return [(t, c * d) for t, d in self.lie(args[1])]
        if h.startswith("d") and set(h[1:]) <= {"'"}:
            return [(self.dgen(x), self.ring.one)]
        raise PresentationSyntaxError(f"unknown operator {h!r}", *_pos(x))


# -- operad terms -----------------------------------------------------------------

def _op_term(x, arities: dict):
    if isinstance(x, Tok):
        if x.text.startswith("$") and x.text[1:].isdigit() and int(x.text[1:]) > 0:
            return int(x.text[1:])
        raise PresentationSyntaxError(f"expected an input $k, got {x.text!r}", *_pos(x))
    h = _head(x)
    if h not in arities:
        raise PresentationSyntaxError(f"unknown operation {h!r}", *_pos(x))
    _need(x, arities[h], h)
    return Node(h, tuple(_op_term(a, arities) for a in x.items[1:]))


def _op_combo(x, arities: dict, ring: RingSpec) -> list:
    if isinstance(x, SExpr):
        h = _head(x)
        args = x.items[1:]
        if h == "+":
            return [p for a in args for p in _op_combo(a, arities, ring)]
        if h == "-":
            _need(x, (1, 2), "-")
            neg = [(t, -c) for t, c in _op_combo(args[-1], arities, ring)]
            return neg if len(args) == 1 else _op_combo(args[0], arities, ring) + neg
        if h == "*":
            _need(x, 2, "*")
            c = _scalar(args[0], ring)
            if c is None:
                raise PresentationSyntaxError("(* c e) needs a scalar c", *_pos(args[0]))
            return [(t, c * d) for t, d in _op_combo(args[1], arities, ring)]
    return [(_op_term(x, arities), ring.one)]


def _merge(pairs: list) -> tuple:
    acc: dict = {}
    for t, c in pairs:
        acc[t] = acc.get(t, 0) + c
    return tuple((t, c) for t, c in acc.items() if c)


# -- parsing ----------------------------------------------------------------------

def _atoms(kw: Tok, items: list) -> list[str]:
    for it in items:
        if not isinstance(it, Tok):
            raise PresentationSyntaxError(f"{kw.text} takes plain names", *_pos(it))
    return [it.text for it in items]


def parse_presentation(text: str):
    stmts = _statements(tokenize(text))
    seen: dict = {}
    for kw, items in stmts:
        if kw.text in seen:
            raise PresentationSyntaxError(f"duplicate statement {kw.text!r}", *_pos(kw))
        seen[kw.text] = (kw, items)
    known = {"ring", "operad", "name", "gens", "degrees", "rels", "presentation", "ops"}
    for k, (kw, _) in seen.items():
        if k not in known:
            raise PresentationSyntaxError(f"unknown statement {k!r}", *_pos(kw))
    ring = QQ
    if "ring" in seen:
        kw, items = seen["ring"]
        vals = _atoms(kw, items)
        if len(vals) != 1:
            raise PresentationSyntaxError("ring takes one name", *_pos(kw))
        try:
            ring = parse_ring(vals[0])
        except ValueError as err:
            raise PresentationSyntaxError(str(err), *_pos(items[0])) from None
    if "presentation" in seen:
        return _parse_operad(seen, ring)
    if "operad" not in seen or "gens" not in seen:
        raise PresentationSyntaxError("an algebra needs 'operad' and 'gens'", 1, 1)
    kw, items = seen["operad"]
    names = _atoms(kw, items)
    if len(names) != 1:
        raise PresentationSyntaxError("operad takes one name", *_pos(kw))
    kind = names[0]
    if kind not in ("Com", "Ass", "Lie"):
        raise UnknownOperad(kind)
    gens = _atoms(*seen["gens"])
    if len(set(gens)) != len(gens):
        raise PresentationSyntaxError("duplicate generator", *_pos(seen["gens"][0]))
    degrees = [1] * len(gens)
    if "degrees" in seen:
        kw, items = seen["degrees"]
        ds = _atoms(kw, items)
        if len(ds) != len(gens) or not all(d.isdigit() and int(d) > 0 for d in ds):
            raise PresentationSyntaxError("degrees must be one positive integer per generator",
                                          *_pos(kw))
        degrees = [int(d) for d in ds]
    name = ""
    if "name" in seen:
        kw, items = seen["name"]
        if len(items) != 1 or not isinstance(items[0], Tok):
            raise PresentationSyntaxError("name takes one word or quoted string", *_pos(kw))
        name = items[0].text
    rd = _AlgebraReader(kind, gens, degrees, ring)
    rels = seen.get("rels", (None, []))[1]
    if kind == "Lie":
        lie = [_merge(rd.lie(r)) for r in rels]
        return PresentedAlgebra(kind, gens, [], degrees, ring, [c for c in lie if c] or None,
                                name)
    return PresentedAlgebra(kind, gens, [rd.poly(r) for r in rels], degrees, ring, None, name)


def _parse_operad(seen: dict, ring: RingSpec) -> OperadPresentation:
    kw, items = seen["presentation"]
    names = _atoms(kw, items)
    if len(names) != 1:
        raise PresentationSyntaxError("presentation takes one name", *_pos(kw))
    arities = {}
    if "ops" in seen:
        for it in seen["ops"][1]:
            m = re.fullmatch(r"([^/]+)/(\d+)", it.text) if isinstance(it, Tok) else None
            if not m:
                raise PresentationSyntaxError("ops entries look like mu/2", *_pos(it))
            arities[m.group(1)] = int(m.group(2))
    rels = tuple(_merge(_op_combo(r, arities, ring)) for r in seen.get("rels", (None, []))[1])
    name = names[0]
    strategy = Linear
    try:
        b = builtin_operad(name, ring)
        if b.arities() == arities:
            strategy = b.nf_strategy
    except UnknownOperad:
        pass
    gens = tuple(OpSymbol(n, a) for n, a in arities.items())
    return OperadPresentation(name, gens, rels, strategy, ring)


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# -- emission ---------------------------------------------------------------------

def _fmt_scalar(c) -> str:
    return str(c)


def _quote(s: str) -> str:
    return f'"{s}"'


def _gen_atom(A: PresentedAlgebra, i: int) -> str:
    g = A.generators[i]
    for sym in ("d'''", "d''", "d'", "d"):
        if g.startswith(sym) and g[len(sym):] in A._index:
            return f"({sym} {g[len(sym):]})"
    return g


def _mono_term(A: PresentedAlgebra, m: str) -> str:
    if not m:
        return "1"
    atoms = [_gen_atom(A, index(ch)) for ch in m]
    t = atoms[-1]
    for a in reversed(atoms[:-1]):
        t = f"(mu {a} {t})"
    return t


def _scaled(c, body: str, one) -> str:
    if body == "1":
        return _fmt_scalar(c)
    return body if c == one else f"(* {_fmt_scalar(c)} {body})"


def emit_poly(A: PresentedAlgebra, f: dict) -> str:
    if not f:
        return "0"
    keys = sorted(f, key=A.order.key, reverse=True)
    parts = [_scaled(f[m], _mono_term(A, m), A.ring.one) for m in keys]
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


def _tree_term(A: PresentedAlgebra, t) -> str:
    if isinstance(t, int):
        return _gen_atom(A, t)
    return f"(mu {_tree_term(A, t[0])} {_tree_term(A, t[1])})"


def emit_lie(A: PresentedAlgebra, combo) -> str:
    parts = [_scaled(c, _tree_term(A, t), A.ring.one) for t, c in combo]
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


def _op_text(t) -> str:
    if isinstance(t, int):
        return f"${t}"
    return f"({t.op} {' '.join(_op_text(c) for c in t.children)})"


def emit(obj) -> str:
    if isinstance(obj, OperadPresentation):
        lines = [f"ring {obj.ring.name};", f"presentation {obj.name};",
                 "ops " + " ".join(f"{g.name}/{g.arity}" for g in obj.generators) + ";"]
        rels = []
        for combo in obj.relations:
            parts = [_scaled(c, _op_text(t), obj.ring.one) for t, c in combo]
            rels.append(parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})")
        lines.append(_rels_block(rels))
        return "\n".join(lines) + "\n"
    A = obj
    lines = [f"ring {A.ring.name};", f"operad {A.kind};", f"name {_quote(A.name)};",
             "gens " + " ".join(A.generators) + ";",
             "degrees " + " ".join(str(d) for d in A.degrees) + ";"]
    if A.kind == "Lie":
        trees = A.lie_relations or ()
        if len(A.relations) != len(trees):
            raise ValueError("only bracket relations of a Lie presentation can be written")
        rels = [emit_lie(A, combo) for combo in trees]
    else:
        rels = [emit_poly(A, r) for r in A.relations]
    lines.append(_rels_block(rels))
    return "\n".join(lines) + "\n"


def _rels_block(rels: list) -> str:
    if not rels:
        return "rels;"
    return "rels\n" + "\n".join("  " + r for r in rels) + ";"


def dump(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(obj))


__all__ = ["parse_presentation", "emit", "emit_poly", "load", "dump", "tokenize",
           "PresentationSyntaxError", "ArityError"]
