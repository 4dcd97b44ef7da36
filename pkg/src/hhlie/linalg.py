"""Exact scalars and sparse linear algebra over Q and GF(p).

Vectors are plain dicts ``{column: scalar}`` with no zero entries.  Columns are
non-negative ints; callers map their own coordinates to ints first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels

__all__ = ["ModP", "Field", "Echelon", "nullspace", "rank", "is_prime"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class ModP:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    @classmethod
    def _raw(cls, v, p):
        obj = object.__new__(cls)
        obj.v = v
        obj.p = p
        return obj

    def _other(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP._raw((self.v + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP._raw((self.v - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP._raw((o - self.v) % self.p, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP._raw(self.v * o % self.p, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return ModP._raw(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by 0 in GF(%d)" % self.p)
        return ModP._raw(self.v * pow(o, -1, self.p) % self.p, self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP._raw(o % self.p, self.p) / self

    def __neg__(self):
        return ModP._raw((-self.v) % self.p, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ModP._raw(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def signed(self) -> int:
        """Representative in (-p/2, p/2], handy for printing."""
        return self.v - self.p if self.v > self.p // 2 else self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.signed())


class Field:
    """The prime field of a given characteristic: Q for 0, GF(p) otherwise.

    Calling a field coerces ints, Fractions, ``"a/b"`` strings and residues
    into it.
    """

    __slots__ = ("characteristic", "zero", "one")

    def __new__(cls, characteristic: int):
        return _field(int(characteristic))

    @classmethod
    def _make(cls, characteristic):
        if characteristic != 0 and not is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        if characteristic >= _kernels.MAX_PRIME:
            raise ValueError("primes of 2**31 and above are not supported")
        obj = object.__new__(cls)
        obj.characteristic = characteristic
        if characteristic == 0:
            obj.zero, obj.one = Fraction(0), Fraction(1)
        else:
            obj.zero, obj.one = ModP(0, characteristic), ModP(1, characteristic)
        return obj

    def __reduce__(self):
        return (Field, (self.characteristic,))

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if p == 0:
            if isinstance(x, ModP):
                raise TypeError("cannot coerce a residue into Q")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != p:
                raise ValueError(f"cannot coerce GF({x.p}) element into GF({p})")
            return x
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return ModP(x.numerator * pow(x.denominator, -1, p), p)
        return ModP(int(x), p)

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    def to_int(self, x) -> int:
        return x.v

    def __repr__(self):
        return f"Field({self.characteristic})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))


@lru_cache(maxsize=None)
def _field(characteristic):
    return Field._make(characteristic)


# --- sparse vectors -------------------------------------------------------

def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place, dropping zeros."""
    for k, v in x.items():
        n = y.get(k)
        if n is None:
            y[k] = a * v
        else:
            n = n + a * v
            if n:
                y[k] = n
            else:
                del y[k]


def scale(x: dict, a) -> dict:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Reduced row echelon basis of a subspace, grown one vector at a time.

    Each stored row is monic at its pivot (the smallest column in its
    support) and vanishes at every other pivot.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}

    @classmethod
    def from_rref(cls, field: Field, rows: dict) -> "Echelon":
        """Wrap rows already in reduced echelon form (``{pivot: row}``)."""
        e = cls(field)
        e.rows = dict(rows)
        return e

    @classmethod
    def of(cls, field: Field, vecs, ncols: int) -> "Echelon":
        return cls.from_rref(field, rref_rows(list(vecs), ncols, field))

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` modulo the span; zero at every pivot."""
        out = dict(vec)
        for c in [c for c in vec if c in self.rows]:
            a = out.get(c)
            if a:
                axpy(out, -a, self.rows[c])
        return out

    def add(self, vec: dict) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        inv = self.field.one / r[c]
        r = scale(r, inv)
        for row in self.rows.values():
            a = row.get(c)
            if a:
                axpy(row, -a, r)
        self.rows[c] = r
        return True

    def extend(self, vecs) -> None:
        for v in vecs:
            self.add(v)

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list:
        return [self.rows[c] for c in sorted(self.rows)]

    def coordinates(self, vec: dict) -> dict:
        """Coefficients of ``vec`` over the rows (keyed by pivot)."""
        coords = {c: vec[c] for c in vec if c in self.rows}
        rest = dict(vec)
        for c, a in coords.items():
            axpy(rest, -a, self.rows[c])
        if rest:
            raise ValueError("vector is not in the span")
        return coords


# --- kernels and ranks ----------------------------------------------------

DENSE_LIMIT = 40_000_000


def _dense_rref(rows, ncols, p):
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            m[i, c] = v.v
    return _kernels.rref_modp(m, p)


def rref_rows(rows: list, ncols: int, field: Field) -> dict:
    """RREF of a list of sparse rows, as ``{pivot: row}``."""
    p = field.characteristic
    if p and rows and len(rows) * ncols <= DENSE_LIMIT:
        red, piv = _dense_rref(rows, ncols, p)
        out = {}
        for i, c in enumerate(piv):
            nz = np.flatnonzero(red[i])
            out[int(c)] = {int(j): ModP._raw(int(red[i, j]), p) for j in nz}
        return out
    e = Echelon(field)
    e.extend(rows)
    return e.rows


def nullspace(rows: list, ncols: int, field: Field) -> list:
    """Basis of {x : row.x = 0 for all rows}, one vector per free column."""
    red = rref_rows(rows, ncols, field)
    basis = []
    for f in range(ncols):
        if f in red:
            continue
        v = {f: field.one}
        for c, row in red.items():
            a = row.get(f)
            if a:
                v[c] = -a
        basis.append(v)
    return basis


def rank(rows: list, ncols: int, field: Field) -> int:
    return len(rref_rows(rows, ncols, field))
