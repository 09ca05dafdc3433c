"""Exact scalars (rationals and residues mod p) and dense linear algebra.

>>> m = Matrix.from_rows([[1, 2], [2, 4]])
>>> r, piv = rref(m)
>>> r.to_rows() == [[1, 2], [0, 0]], piv
(True, [0])
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class MixedRings(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Zp:
    """Residue class mod a prime, kept as the least nonnegative residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, o):
        if isinstance(o, Zp):
            if o.p != self.p:
                raise MixedRings(f"Z/{self.p} vs Z/{o.p}")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction) and o.denominator == 1:
            return o.numerator
        return None

    def __add__(self, o):
        w = self._lift(o)
        return NotImplemented if w is None else Zp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._lift(o)
        return NotImplemented if w is None else Zp(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._lift(o)
        return NotImplemented if w is None else Zp(w - self.v, self.p)

    def __mul__(self, o):
        w = self._lift(o)
        return NotImplemented if w is None else Zp(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._lift(o)
        if w is None:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero mod p")
        return Zp(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._lift(o)
        if w is None:
            return NotImplemented
        return Zp(w, self.p) / self

    def __neg__(self):
        return Zp(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, o):
        w = self._lift(o)
        if w is None:
            return NotImplemented
        return (self.v - w) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


@dataclass(frozen=True)
class RingSpec:
    """Base ring: rationals when ``p == 0``, otherwise the prime field Z/p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"Z/{self.p}"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if self.p == 0:
            if isinstance(x, Zp):
                raise MixedRings("residue used over Q")
            return Fraction(x)
        if isinstance(x, Zp):
            if x.p != self.p:
                raise MixedRings(f"Z/{x.p} used over Z/{self.p}")
            return x
        x = Fraction(x)
        return Zp(x.numerator, self.p) / Zp(x.denominator, self.p)

    def owns(self, x) -> bool:
        if self.p == 0:
            return isinstance(x, (int, Fraction))
        return isinstance(x, int) or (isinstance(x, Zp) and x.p == self.p)

    def fmt(self, x) -> str:
        return str(x)

    def __str__(self):
        return self.name


QQ = RingSpec()


def GF(p: int) -> RingSpec:
    return RingSpec(p)


def parse_ring(s: str) -> RingSpec:
    s = s.strip()
    if s in ("Q", "QQ"):
        return QQ
    for pre in ("Z/", "GF", "F"):
        if s.startswith(pre) and s[len(pre):].isdigit():
            return GF(int(s[len(pre):]))
    raise ValueError(f"unknown ring {s!r}")


def infer_ring(values: Iterable) -> RingSpec:
    """Smallest ring owning every value; bare ints are ring-agnostic."""
    found = None
    for x in values:
        if isinstance(x, Zp):
            r = GF(x.p)
        elif isinstance(x, Fraction) and x.denominator != 1:
            r = QQ
        else:
            continue
        if found is None:
            found = r
        elif found != r:
            raise MixedRings(f"{found} vs {r}")
    return found or QQ


@dataclass(frozen=True)
class Matrix:
    ring: RingSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ring: RingSpec | None = None,
                  cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = [x for r in rows for x in r]
        if ring is None:
            ring = infer_ring(flat)
        else:
            for x in flat:
                if not ring.owns(x) and not (ring.p and isinstance(x, Fraction)):
                    raise MixedRings(f"{x!r} not in {ring}")
        return cls(ring, len(rows), ncols, tuple(ring(x) for x in flat))

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, (ring.zero,) * (rows * cols))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls(ring, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self[i, j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ring != other.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            a, b = self.to_rows(), other.to_rows()
            z = self.ring.zero
            out = []
            for row in a:
                acc = [z] * other.cols
                for k, x in enumerate(row):
                    if x:
                        bk = b[k]
                        for j in range(other.cols):
                            if bk[j]:
                                acc[j] = acc[j] + x * bk[j]
                out.append(acc)
            return Matrix(self.ring, self.rows, other.cols, tuple(v for r in out for v in r))
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        z = self.ring.zero
        out = []
        for row in self.to_rows():
            acc = z
            for x, y in zip(row, vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return out

    def rank(self) -> int:
        return len(rref(self)[1])

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())


def _check_entries(m: Matrix) -> None:
    for x in m.entries:
        if not m.ring.owns(x):
            raise MixedRings(f"entry {x!r} is not in {m.ring}")


def _rref_rows(rows: list[list], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    _check_entries(m)
    rows = m.to_rows()
    pivots = _rref_rows(rows, m.cols)
    return Matrix(m.ring, m.rows, m.cols, tuple(x for r in rows for x in r)), pivots


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right null space, one vector per free column."""
    red, pivots = rref(m)
    ring = m.ring
    rows = red.to_rows()
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [ring.zero] * m.cols
        v[f] = ring.one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def rank_of_vectors(ring: RingSpec, vectors: Sequence[Sequence], width: int) -> int:
    if not vectors:
        return 0
    rows = [[ring(x) for x in v] for v in vectors]
    return len(_rref_rows(rows, width))


class RowSpace:
    """Incrementally maintained span of sparse vectors (dicts key -> scalar)."""

    def __init__(self):
        self.rows: dict = {}  # pivot key -> reduced row with leading 1

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for piv, row in self.rows.items():
            c = v.get(piv)
            if c:
                for k, x in row.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v, key=_sort_key)
        c = v[piv]
        v = {k: x / c for k, x in v.items()}
        for p, row in self.rows.items():
            a = row.get(piv)
            if a:
                for k, x in v.items():
                    y = row.get(k, 0) - a * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[piv] = v
        return True

    def __len__(self):
        return len(self.rows)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def _sort_key(k):
    return (str(type(k)), k) if not isinstance(k, (int, str, tuple)) else (type(k).__name__, k)
