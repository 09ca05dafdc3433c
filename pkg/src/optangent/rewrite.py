"""Normal forms for quotients of free commutative and free associative algebras.

Monomials are strings: generator ``i`` is the character ``chr(OFFSET + i)``.
Commutative monomials are kept sorted, so both flavours share one
representation and ``str.find`` does subword search.

>>> o = MonomialOrder(False, (1, 1))
>>> rs = complete_ass([{letter(0) + letter(1): 1, letter(1) + letter(0): -1}], o, 3)
>>> rs.dims(3)
[1, 2, 3, 4]
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

OFFSET = 0x100

ComGroebner = "ComGroebner"
AssTruncated = "AssTruncated"
PBW = "PBW"
LinearOnly = "LinearOnly"


class NormalFormIncomplete(RuntimeError):
    pass


class NotLie(ValueError):
    pass


def letter(i: int) -> str:
    return chr(OFFSET + i)


def index(ch: str) -> int:
    return ord(ch) - OFFSET


def word(indices) -> str:
    return "".join(chr(OFFSET + i) for i in indices)


def indices(m: str) -> tuple[int, ...]:
    return tuple(ord(c) - OFFSET for c in m)


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex (commutative) or deglex on words, both graded by weights."""

    commutative: bool
    weights: tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if any(w < 1 for w in self.weights):
            raise ValueError("generator degrees must be positive")

    @property
    def name(self) -> str:
        return "degrevlex" if self.commutative else "deglex"

    def deg(self, m: str) -> int:
        w = self.weights
        return sum(w[ord(c) - OFFSET] for c in m)

    def mul(self, a: str, b: str) -> str:
        if self.commutative:
            if not a:
                return b
            if not b:
                return a
            return "".join(sorted(a + b))
        return a + b

    def key(self, m: str):
        k = self._cache.get(m)
        if k is None:
            if self.commutative:
                exps = [0] * len(self.weights)
                for c in m:
                    exps[ord(c) - OFFSET] += 1
                k = (self.deg(m), tuple(-e for e in reversed(exps)))
            else:
                k = (self.deg(m), m)
            self._cache[m] = k
        return k

    def leading(self, f: dict) -> str:
        return max(f, key=self.key)


# -- polynomial helpers (dicts monomial -> nonzero scalar) -------------------

def padd(f: dict, g: dict, c=1) -> dict:
    out = dict(f)
    for m, x in g.items():
        y = out.get(m, 0) + c * x
        if y:
            out[m] = y
        else:
            out.pop(m, None)
    return out


def pscale(f: dict, c) -> dict:
    if not c:
        return {}
    return {m: c * x for m, x in f.items()}


def pmul(order: MonomialOrder, f: dict, g: dict) -> dict:
    out: dict = {}
    for a, x in f.items():
        for b, y in g.items():
            m = order.mul(a, b)
            z = out.get(m, 0) + x * y
            if z:
                out[m] = z
            else:
                out.pop(m, None)
    return out


def monic(order: MonomialOrder, f: dict) -> dict:
    lc = f[order.leading(f)]
    return f if lc == 1 else {m: x / lc for m, x in f.items()}


# -- multiset helpers for sorted strings --------------------------------------

def _divides(a: str, b: str) -> bool:
    i = j = 0
    la, lb = len(a), len(b)
    while i < la:
        if j == lb:
            return False
        if a[i] == b[j]:
            i += 1
            j += 1
        elif a[i] > b[j]:
            j += 1
        else:
            return False
    return True


def _quotient(b: str, a: str) -> str:
    out = []
    i = 0
    for ch in b:
        if i < len(a) and a[i] == ch:
            i += 1
        else:
            out.append(ch)
    return "".join(out)


def _lcm(a: str, b: str) -> str:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return "".join(out)


@dataclass
class RewriteSystem:
    kind: str
    order: MonomialOrder
    rules: dict  # lhs -> monic polynomial whose leading monomial is lhs
    bound: int | None  # completion cap; None means run to termination
    complete: bool
    skipped: int = 0

    def __post_init__(self):
        self._by_last: dict = {}
        for lhs in self.rules:
            if lhs:
                self._by_last.setdefault(lhs[-1], []).append(lhs)
        self._has_unit = "" in self.rules
        self._nf_cache: dict = {}

    # -- reduction ----------------------------------------------------------

    def _find(self, m: str):
        if self._has_unit:
            return "", "", m
        if self.order.commutative:
            for lhs in self.rules:
                if _divides(lhs, m):
                    return lhs, _quotient(m, lhs), None
            return None
        for lhs in self.rules:
            k = m.find(lhs)
            if k >= 0:
                return lhs, m[:k], m[k + len(lhs):]
        return None

    def reduce_monomial(self, m: str) -> dict:
        hit = self._nf_cache.get(m)
        if hit is None:
            hit = self._reduce({m: 1})
            self._nf_cache[m] = hit
        return hit

    def _reduce(self, f: dict) -> dict:
        order = self.order
        f = dict(f)
        out: dict = {}
        while f:
            m = max(f, key=order.key)
            c = f.pop(m)
            hit = self._find(m)
            if hit is None:
                out[m] = c
                continue
            lhs, u, v = hit
            g = self.rules[lhs]
            for mm, cc in g.items():
                if mm == lhs:
                    continue
                if order.commutative:
                    mono = order.mul(u, mm)
                else:
                    mono = u + mm + v
                y = f.get(mono, 0) - c * cc
                if y:
                    f[mono] = y
                else:
                    f.pop(mono, None)
        return out

    def normal_form(self, f: dict) -> dict:
        out: dict = {}
        for m, c in f.items():
            for mm, cc in self.reduce_monomial(m).items():
                y = out.get(mm, 0) + c * cc
                if y:
                    out[mm] = y
                else:
                    out.pop(mm, None)
        return out

    def is_normal(self, m: str) -> bool:
        return self._find(m) is None

    # -- enumeration ----------------------------------------------------------

    def normal_monomials(self, max_degree: int) -> list[list[str]]:
        """Normal monomials grouped by weighted degree 0..max_degree."""
        out: list[list[str]] = [[] for _ in range(max_degree + 1)]
        if self._has_unit:
            return out
        w = self.order.weights
        n = len(w)
        letters = [letter(i) for i in range(n)]
        comm = self.order.commutative
        lhs_by_letter: dict = {}
        for lhs in self.rules:
            for ch in set(lhs):
                lhs_by_letter.setdefault(ch, []).append(lhs)
        by_last = self._by_last

        def ok(m: str, ch: str) -> bool:
            if comm:
                return not any(_divides(l, m) for l in lhs_by_letter.get(ch, ()))
            return not any(m.endswith(l) for l in by_last.get(ch, ()))

        stack = [("", 0, 0)]
        while stack:
            m, d, start = stack.pop()
            out[d].append(m)
            for i in range(start if comm else 0, n):
                nd = d + w[i]
                if nd > max_degree:
                    continue
                ch = letters[i]
                nm = m + ch
                if ok(nm, ch):
                    stack.append((nm, nd, i))
        for lst in out:
            lst.sort(key=self.order.key)
        return out

    def dims(self, max_degree: int) -> list[int]:
        return [len(x) for x in self.normal_monomials(max_degree)]

    def dump(self, names) -> str:
        lines = [f"# kind={self.kind} order={self.order.name} bound={self.bound} "
                 f"complete={self.complete}"]
        for lhs in sorted(self.rules, key=self.order.key):
            g = self.rules[lhs]
            rhs = {m: -c for m, c in g.items() if m != lhs}
            lines.append(f"{format_monomial(lhs, names)} -> {format_poly(rhs, names, self.order)}")
        return "\n".join(lines)


def format_monomial(m: str, names, sep: str = "*") -> str:
    if not m:
        return "1"
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        nm = names[index(m[i])]
        parts.append(nm if j - i == 1 else f"{nm}^{j - i}")
        i = j
    return sep.join(parts)


def format_poly(f: dict, names, order: MonomialOrder | None = None) -> str:
    if not f:
        return "0"
    keys = sorted(f, key=order.key, reverse=True) if order else sorted(f)
    out = []
    for k, m in enumerate(keys):
        c = f[m]
        neg = isinstance(c, (int, Fraction)) and c < 0
        mag = -c if neg else c
        mono = format_monomial(m, names)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# -- commutative Buchberger ---------------------------------------------------

def buchberger_com(relations, order: MonomialOrder, bound: int | None = None) -> RewriteSystem:
    """Reduced Groebner basis under degrevlex.

    S-pairs whose lcm exceeds ``bound`` are postponed; with ``bound=None`` the
    algorithm runs to termination (it always terminates).
    """
    assert order.commutative
    basis: list[dict] = []
    lms: list[str] = []
    tie = count()
    pairs: list = []
    skipped = 0

    def add(f):
        f = monic(order, f)
        lm = order.leading(f)
        for i, l2 in enumerate(lms):
            if basis[i] is None:
                continue
            L = _lcm(lm, l2)
            if len(L) == len(lm) + len(l2):
                continue  # coprime leading monomials
            heapq.heappush(pairs, (order.deg(L), next(tie), i, len(lms)))
        basis.append(f)
        lms.append(lm)

    for r in relations:
        r = {m: c for m, c in r.items() if c}
        r = reduce_live(r, basis, lms, order)
        if r:
            add(r)
    while pairs:
        d, _, i, j = heapq.heappop(pairs)
        if basis[i] is None or basis[j] is None:
            continue
        if bound is not None and d > bound:
            skipped += 1
            continue
        fi, fj = basis[i], basis[j]
        L = _lcm(lms[i], lms[j])
        s = padd(pmul(order, {_quotient(L, lms[i]): 1}, fi),
                 pmul(order, {_quotient(L, lms[j]): 1}, fj), -1)
        s = reduce_live(s, basis, lms, order)
        if s:
            add(s)
    live = [(l, f) for l, f in zip(lms, basis) if f is not None]
    # minimal then reduced basis
    minimal = [(l, f) for l, f in live
               if not any(l2 != l and _divides(l2, l) for l2, _ in live)]
    seen = set()
    uniq = []
    for l, f in minimal:
        if l not in seen:
            seen.add(l)
            uniq.append((l, f))
    rules = dict(uniq)
    reduced = {}
    for l, f in uniq:
        tail = {m: c for m, c in f.items() if m != l}
        others = RewriteSystem(ComGroebner, order, {k: v for k, v in rules.items() if k != l},
                               None, True)
        tail = others._reduce(tail)
        tail[l] = 1
        reduced[l] = tail
    return RewriteSystem(ComGroebner, order, reduced, bound, skipped == 0, skipped)


def reduce_live(f, basis, lms, order):
    rules = {l: g for l, g in zip(lms, basis) if g is not None}
    return RewriteSystem(ComGroebner, order, rules, None, True)._reduce(f)


# -- noncommutative completion --------------------------------------------------

def complete_ass(relations, order: MonomialOrder, bound: int | None) -> RewriteSystem:
    """Mora-style completion on words under deglex, overlaps capped at ``bound``.

    ``complete`` is True when no overlap was skipped, i.e. the rules form a
    finite Groebner basis of the two-sided ideal.
    """
    assert not order.commutative
    rules: dict = {}
    queue = [dict(r) for r in relations if r]
    pairs: list = []
    tie = count()
    skipped = 0

    def system():
        return RewriteSystem(AssTruncated, order, rules, bound, True)

    def overlaps(u, v):
        for k in range(1, min(len(u), len(v))):
            if u[-k:] == v[:k]:
                yield k

    def add(f):
        f = monic(order, f)
        lm = order.leading(f)
        for lhs in list(rules):
            if lm in lhs:
                queue.append(rules.pop(lhs))
        rules[lm] = f
        for lhs, g in list(rules.items()):
            for (a, fa), (b, fb) in (((lm, f), (lhs, g)), ((lhs, g), (lm, f))):
                for k in overlaps(a, b):
                    w = a + b[k:]
                    heapq.heappush(pairs, (order.deg(w), next(tie), a, fa, b, fb, k))
                if a == b:
                    break

    while queue or pairs:
        while queue:
            f = system()._reduce(queue.pop())
            if f:
                add(f)
        if not pairs:
            break
        d, _, a, fa, b, fb, k = heapq.heappop(pairs)
        if rules.get(a) is not fa or rules.get(b) is not fb:
            continue
        if bound is not None and d > bound:
            skipped += 1
            continue
        s = padd(pmul(order, fa, {b[k:]: 1}), pmul(order, {a[:len(a) - k]: 1}, fb), -1)
        s = system()._reduce(s)
        if s:
            queue.append(s)
    # tidy right-hand sides
    final = {}
    for lhs, g in rules.items():
        others = RewriteSystem(AssTruncated, order, {k: v for k, v in rules.items() if k != lhs},
                               None, True)
        tail = others._reduce({m: c for m, c in g.items() if m != lhs})
        tail[lhs] = 1
        final[lhs] = tail
    return RewriteSystem(AssTruncated, order, final, bound, skipped == 0, skipped)


def linear_only(order: MonomialOrder) -> RewriteSystem:
    return RewriteSystem(LinearOnly, order, {}, None, True)


# -- PBW ---------------------------------------------------------------------

def pbw_system(lie) -> RewriteSystem:
    """Sorted-word rewriting b_j b_i -> b_i b_j + [b_j, b_i] (i < j) for U(g).

    ``lie`` is a structure-constant Lie algebra; it must be certified.
    """
    if not lie.certified or lie.operad.name != "Lie":
        raise NotLie("PBW rewriting needs a certified Lie algebra")
    n = lie.dim
    order = MonomialOrder(False, (1,) * n)
    op = lie.operad.generators[0].name
    table = lie.tables[op]
    rules = {}
    for i in range(n):
        for j in range(i + 1, n):
            lhs = letter(j) + letter(i)
            g = {lhs: lie.ring.one,
                 letter(i) + letter(j): -lie.ring.one}
            for k, c in table.get((j, i), {}).items():
                g = padd(g, {letter(k): c}, -1)
            rules[lhs] = g
    return RewriteSystem(PBW, order, rules, None, True)


def pbw_normal_form(e: dict, lie) -> dict:
    """Normal form in U(g) of a word-algebra element over g's basis letters."""
    return pbw_system(lie).normal_form(e)
