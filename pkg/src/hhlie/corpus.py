"""Presentations of the tame symmetric families and the other test algebras.

Every generator returns a :class:`Presentation` that is confluent under the
default length-lexicographic order.  Where the displayed relations are not a
complete rewriting system, the missing consequences (elements of the same
ideal) are appended; each generator's docstring lists them.  Words are read
in traversal order, first arrow first.
"""

from __future__ import annotations

import inspect
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .algebra import Presentation, make_presentation
from .errors import BadParameters
from .linalg import Field

__all__ = ["FamilySpec", "Family", "FAMILIES", "gen", "sweep", "default_corpus",
           "family_ids"]


def _w(s: str) -> tuple:
    return tuple(s.split())


def _pw(s: str, n: int) -> tuple:
    return _w(s) * n


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple  # sorted (name, value) pairs
    char: int

    @classmethod
    def of(cls, family: str, char: int = 0, **params) -> "FamilySpec":
        return cls(family, tuple(sorted(params.items())), char)

    @property
    def kwargs(self) -> dict:
        return dict(self.params)

    @property
    def label(self) -> str:
        ps = ",".join(f"{k}={_fmt(v)}" for k, v in self.params)
        return f"{self.family}({ps})/{'Q' if self.char == 0 else f'GF({self.char})'}"


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


@dataclass(frozen=True)
class Family:
    id: str
    build: Callable
    params: tuple
    description: str
    chars: tuple = (0, 2, 3, 5)


def _need(cond: bool, msg: str):
    if not cond:
        raise BadParameters(msg)


def _int(name, v, lo):
    _need(isinstance(v, int) and v >= lo, f"{name} must be an integer >= {lo}, got {v!r}")


# --- local algebras: one vertex, loops X and Y -----------------------------

_XY = (["e"], [("X", "e", "e"), ("Y", "e", "e")])


def d1a1k(F: Field, k: int) -> Presentation:
    """KQ/(X^2, Y^2, (XY)^k - (YX)^k); k = 1 gives KQ/(X^2, Y^2, XY - YX)."""
    _int("k", k, 1)
    rels = [[(1, _w("X X"))], [(1, _w("Y Y"))],
            [(1, _pw("X Y", k)), (-1, _pw("Y X", k))]]
    return make_presentation(F, *_XY, rels, name=f"D(1A)^{k}_1")


def dxy_mn(F: Field, m: int, n: int) -> Presentation:
    """KQ/(XY, YX, X^m - Y^n), m >= n >= 2, m + n > 4.

    Appended consequences: X^(m+1) and Y^(n+1).
    """
    _int("n", n, 2)
    _int("m", m, n)
    _need(m + n > 4, "need m + n > 4")
    rels = [[(1, _w("X Y"))], [(1, _w("Y X"))],
            [(1, _pw("X", m)), (-1, _pw("Y", n))],
            [(1, _pw("X", m + 1))], [(1, _pw("Y", n + 1))]]
    return make_presentation(F, *_XY, rels, name=f"D(XY)^{m},{n}")


def d1a4(F: Field) -> Presentation:
    """KQ/(X^2, XY - YX, XY - Y^2), characteristic 2."""
    _need(F.characteristic == 2, "this family only exists in characteristic 2")
    rels = [[(1, _w("X X"))], [(1, _w("X Y")), (-1, _w("Y X"))],
            [(1, _w("X Y")), (-1, _w("Y Y"))]]
    return make_presentation(F, *_XY, rels, name="D(1A)_4")


def d1a2k(F: Field, k: int, d: int) -> Presentation:
    """KQ/(X^2 - (XY)^k, Y^2 - d(XY)^k, (XY)^k - (YX)^k, (XY)^k X, (YX)^k Y), characteristic 2.

    Appended consequences: X^3, X^2 Y, Y X^2.
    """
    _need(F.characteristic == 2, "this family only exists in characteristic 2")
    _int("k", k, 2)
    _need(d in (0, 1), "d must be 0 or 1")
    rels = [[(1, _w("X X")), (-1, _pw("X Y", k))],
            [(1, _w("Y Y")), (-d, _pw("X Y", k))],
            [(1, _pw("X Y", k)), (-1, _pw("Y X", k))],
            [(1, _pw("X Y", k) + ("X",))], [(1, _pw("Y X", k) + ("Y",))],
            [(1, _w("X X X"))], [(1, _w("X X Y"))], [(1, _w("Y X X"))]]
    return make_presentation(F, *_XY, [[t for t in r if t[0]] for r in rels],
                             name=f"D(1A)^{k}_2({d})")


def sd1a1k(F: Field, k: int) -> Presentation:
    """KQ/((XY)^k - (YX)^k, (XY)^k X, Y^2, X^2 - (YX)^(k-1) Y).

    Appended consequences: X X Y, Y X X, X^4.
    """
    _int("k", k, 2)
    rels = [[(1, _pw("X Y", k)), (-1, _pw("Y X", k))],
            [(1, _pw("X Y", k) + ("X",))], [(1, _w("Y Y"))],
            [(1, _w("X X")), (-1, _pw("Y X", k - 1) + ("Y",))],
            [(1, _w("X X Y"))], [(1, _w("Y X X"))], [(1, _w("X X X X"))]]
    return make_presentation(F, *_XY, rels, name=f"SD(1A)^{k}_1")


def q1a1k(F: Field, k: int) -> Presentation:
    """KQ/((XY)^k - (YX)^k, (XY)^k X, Y^2 - (XY)^(k-1) X, X^2 - (YX)^(k-1) Y).

    Appended consequences: XXY, XYY, YXX, YYX, Y^3 - X^3, X^4.
    """
    _int("k", k, 2)
    rels = [[(1, _pw("X Y", k)), (-1, _pw("Y X", k))],
            [(1, _pw("X Y", k) + ("X",))],
            [(1, _w("Y Y")), (-1, _pw("X Y", k - 1) + ("X",))],
            [(1, _w("X X")), (-1, _pw("Y X", k - 1) + ("Y",))],
            [(1, _w("X X Y"))], [(1, _w("X Y Y"))], [(1, _w("Y X X"))], [(1, _w("Y Y X"))],
            [(1, _w("Y Y Y")), (-1, _w("X X X"))], [(1, _w("X X X X"))]]
    return make_presentation(F, *_XY, rels, name=f"Q(1A)^{k}_1")


def truncated_polynomial(F: Field, n: int) -> Presentation:
    """K[x]/(x^n)."""
    _int("n", n, 2)
    return make_presentation(F, ["e"], [("x", "e", "e")], [[(1, _pw("x", n))]],
                             name=f"K[x]/(x^{n})")


# --- two simple modules -------------------------------------------------------

_2B = (["e0", "e1"], [("a", "e0", "e0"), ("b", "e0", "e1"), ("g", "e1", "e0"),
                      ("n", "e1", "e1")])


def d2b(F: Field, k: int, s: int, c: int) -> Presentation:
    """KQ/(bn, ng, gb, a^2 - c(abg)^k, (abg)^k - (bga)^k, n^s - (gab)^k), k >= s >= 2.

    a is the loop at e0, b: e0 -> e1, g: e1 -> e0, n the loop at e1.
    Appended consequences: a^3, a^2 b, g a^2, n^(s+1).  For s = 1 the loop n
    equals a path of length 3k, so the ideal is not admissible; s >= 2 is required.
    """
    _int("s", s, 2)
    _int("k", k, s)
    _need(c in (0, 1), "c must be 0 or 1")
    rels = [[(1, _w("b n"))], [(1, _w("n g"))], [(1, _w("g b"))],
            [(1, _w("a a")), (-c, _pw("a b g", k))],
            [(1, _pw("a b g", k)), (-1, _pw("b g a", k))],
            [(1, _pw("n", s)), (-1, _pw("g a b", k))],
            [(1, _w("a a a"))], [(1, _w("a a b"))], [(1, _w("g a a"))],
            [(1, _pw("n", s + 1))]]
    return make_presentation(F, *_2B, [[t for t in r if t[0]] for r in rels],
                             name=f"D(2B)^{k},{s}({c})")


def sd2b1(F: Field, k: int, t: int, c: int = 0) -> Presentation:
    """KQ/(gb, ng, bn, a^2 - (bga)^(k-1) bg - c(abg)^k, n^t - (gab)^k, (abg)^k - (bga)^k).

    k >= 1, t >= 2.  Only c = 0 is generated: for c = 1 the consequences needed
    for a finite rewriting system were not determined.
    Appended consequences: a^2 b, g a^2, a^4, n^(t+1).
    """
    _int("k", k, 1)
    _int("t", t, 2)
    _need(c == 0, "only c = 0 is supported for this family")
    rels = [[(1, _w("g b"))], [(1, _w("n g"))], [(1, _w("b n"))],
            [(1, _w("a a")), (-1, _pw("b g a", k - 1) + _w("b g"))],
            [(1, _pw("n", t)), (-1, _pw("g a b", k))],
            [(1, _pw("a b g", k)), (-1, _pw("b g a", k))],
            [(1, _w("a a b"))], [(1, _w("g a a"))], [(1, _w("a a a a"))],
            [(1, _pw("n", t + 1))]]
    return make_presentation(F, *_2B, rels, name=f"SD(2B)^{k},{t}_1({c})")


def trivial_extension_kronecker(F: Field) -> Presentation:
    """Trivial extension of the Kronecker algebra.

    a, b: e1 -> e2 and c, d: e2 -> e1 with relations ac - bd, ca - db, ad, cb,
    bc, da.  Appended consequences: aca, cac.
    """
    V = ["e1", "e2"]
    A = [("a", "e1", "e2"), ("b", "e1", "e2"), ("c", "e2", "e1"), ("d", "e2", "e1")]
    rels = [[(1, _w("a c")), (-1, _w("b d"))], [(1, _w("c a")), (-1, _w("d b"))],
            [(1, _w("a d"))], [(1, _w("c b"))], [(1, _w("b c"))], [(1, _w("d a"))],
            [(1, _w("a c a"))], [(1, _w("c a c"))]]
    return make_presentation(F, V, A, rels, name="T(Kronecker)")


# --- three simple modules -----------------------------------------------------

def three_k(F: Field) -> Presentation:
    """Type 3K: b: 1->2, g: 2->1, k: 1->3, l: 3->1, d: 2->3, n: 3->2.

    Relations bg - kl, gb - dn, nd - lk, bd, gk, dl, ng, kn, lb.
    Appended consequences: bgb, gbg.
    """
    V = ["e1", "e2", "e3"]
    A = [("b", "e1", "e2"), ("g", "e2", "e1"), ("k", "e1", "e3"), ("l", "e3", "e1"),
         ("d", "e2", "e3"), ("n", "e3", "e2")]
    rels = [[(1, _w("b g")), (-1, _w("k l"))], [(1, _w("g b")), (-1, _w("d n"))],
            [(1, _w("n d")), (-1, _w("l k"))]]
    rels += [[(1, _w(m))] for m in ("b d", "g k", "d l", "n g", "k n", "l b",
                                     "b g b", "g b g")]
    return make_presentation(F, V, A, rels, name="3K")


def three_a(F: Field) -> Presentation:
    """Type 3A: b: 0->1, g: 1->0, d: 1->2, n: 2->1 with bd, ng, gb - dn.

    Appended consequences: bgb, gbg.
    """
    V = ["e0", "e1", "e2"]
    A = [("b", "e0", "e1"), ("g", "e1", "e0"), ("d", "e1", "e2"), ("n", "e2", "e1")]
    rels = [[(1, _w("b d"))], [(1, _w("n g"))], [(1, _w("g b")), (-1, _w("d n"))],
            [(1, _w("b g b"))], [(1, _w("g b g"))]]
    return make_presentation(F, V, A, rels, name="3A")


def d3r(F: Field, k: int, s: int, t: int, u: int) -> Presentation:
    """Type D(3R)^(k,s,t,u), s >= t >= u >= k >= 1, t >= 2.

    Loops a at e1, r at e2, x at e3; b: e1 -> e2, d: e2 -> e3, l: e3 -> e1.
    Relations ab, br, rd, dx, xl, la, a^s - (bdl)^k, r^t - (dlb)^k,
    x^u - (lbd)^k.  Appended consequences: a^(s+1), r^(t+1), x^(u+1).
    """
    _int("k", k, 1)
    _int("u", u, k)
    _int("t", t, max(u, 2))
    _int("s", s, t)
    V = ["e1", "e2", "e3"]
    A = [("a", "e1", "e1"), ("b", "e1", "e2"), ("r", "e2", "e2"), ("d", "e2", "e3"),
         ("x", "e3", "e3"), ("l", "e3", "e1")]
    rels = [[(1, _w(m))] for m in ("a b", "b r", "r d", "d x", "x l", "l a")]
    rels += [[(1, _pw("a", s)), (-1, _pw("b d l", k))],
             [(1, _pw("r", t)), (-1, _pw("d l b", k))],
             [(1, _pw("x", u)), (-1, _pw("l b d", k))],
             [(1, _pw("a", s + 1))], [(1, _pw("r", t + 1))], [(1, _pw("x", u + 1))]]
    return make_presentation(F, V, A, rels, name=f"D(3R)^{k},{s},{t},{u}")


# --- quantum complete intersections and radical square zero -----------------

def qci(F: Field, n: tuple, q) -> Presentation:
    """K<X1..Xr>/(Xj Xi - q_ij Xi Xj for i < j, Xi^(n_i)).

    ``q`` is a single scalar used for every pair or a dict {(i, j): q_ij}
    with 1-based i < j.
    """
    n = tuple(n)
    r = len(n)
    _need(r >= 1, "need at least one generator")
    for ni in n:
        _int("n_i", ni, 2)
    qd = {}
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            qij = q[(i, j)] if isinstance(q, dict) else q
            qij = Fraction(qij) if not isinstance(qij, str) else Fraction(qij)
            _need(qij != 0 and F(qij) != F.zero, f"q_{i}{j} must be nonzero in {F.name}")
            qd[(i, j)] = qij
    names = [f"X{i}" for i in range(1, r + 1)]
    arrows = [(x, "e", "e") for x in names]
    rels = []
    for (i, j), qij in qd.items():
        xi, xj = names[i - 1], names[j - 1]
        rels.append([(1, (xj, xi)), (-qij, (xi, xj))])
    for x, ni in zip(names, n):
        rels.append([(1, (x,) * ni)])
    qs = _fmt(tuple(str(v) for v in qd.values())) if isinstance(q, dict) else str(q)
    return make_presentation(F, ["e"], arrows, rels, name=f"QCI{_fmt(n)};q={qs}")


def radical_square_zero_qnm(F: Field, n: int, m: int) -> Presentation:
    """Linear quiver e1 -> ... -> en with m parallel arrows per consecutive pair, modulo J^2."""
    _int("n", n, 2)
    _int("m", m, 1)
    V = [f"e{i}" for i in range(1, n + 1)]
    A = [(f"a{i}_{j}", f"e{i}", f"e{i + 1}") for i in range(1, n) for j in range(1, m + 1)]
    rels = [[(1, (x[0], y[0]))] for x in A for y in A if x[2] == y[1]]
    return make_presentation(F, V, A, rels, name=f"Q_{n},{m}/J^2")


FAMILIES = {f.id: f for f in [
    Family("D1A1k", d1a1k, ("k",), "dihedral local D(1A)^k_1; k = 1 is the char-2 exception"),
    Family("DXYmn", dxy_mn, ("m", "n"), "dihedral local KQ/(XY, YX, X^m - Y^n)"),
    Family("D1A4", d1a4, (), "dihedral local KQ/(X^2, XY - YX, XY - Y^2), char 2", (2,)),
    Family("D1A2k", d1a2k, ("k", "d"), "dihedral local D(1A)^k_2(d), char 2", (2,)),
    Family("SD1A1k", sd1a1k, ("k",), "semidihedral local SD(1A)^k_1"),
    Family("Q1A1k", q1a1k, ("k",), "quaternion local Q(1A)^k_1"),
    Family("KXn", truncated_polynomial, ("n",), "truncated polynomial K[x]/(x^n)"),
    Family("D2Bks", d2b, ("k", "s", "c"), "dihedral two-simple D(2B)^(k,s)(c)"),
    Family("SD2B1kt", sd2b1, ("k", "t", "c"), "semidihedral two-simple SD(2B)^(k,t)_1(c), c = 0"),
    Family("TEK", trivial_extension_kronecker, (), "trivial extension of the Kronecker algebra"),
    Family("3K", three_k, (), "three simples, type 3K"),
    Family("3A", three_a, (), "three simples, type 3A"),
    Family("D3Rkstu", d3r, ("k", "s", "t", "u"), "three simples, type D(3R)^(k,s,t,u)"),
    Family("QCI", qci, ("n", "q"), "quantum complete intersection"),
    Family("Qnm", radical_square_zero_qnm, ("n", "m"), "radical square zero Q_(n,m)"),
]}


def family_ids() -> list:
    return list(FAMILIES)


def gen(spec: FamilySpec) -> Presentation:
    fam = FAMILIES.get(spec.family)
    if fam is None:
        raise BadParameters(f"unknown family {spec.family!r}; known: {', '.join(FAMILIES)}")
    try:
        F = Field(spec.char)
    except ValueError as e:
        raise BadParameters(str(e)) from None
    kw = spec.kwargs
    sig = inspect.signature(fam.build).parameters
    missing = [p for p in fam.params if p not in kw and sig[p].default is inspect.Parameter.empty]
    extra = [p for p in kw if p not in fam.params]
    if missing or extra:
        raise BadParameters(f"{spec.family} takes parameters {fam.params}, got {tuple(kw)}")
    return fam.build(F, **kw)


def sweep(ranges: dict) -> Iterator:
    """Yield (FamilySpec, Presentation) over the product of the given ranges.

    ``ranges`` maps a family id to ``{param: values, "char": values}``.  Order
    is deterministic: families in the given order, then parameters in the
    family's declared order, characteristics last.
    """
    for fid, r in ranges.items():
        fam = FAMILIES.get(fid)
        if fam is None:
            raise BadParameters(f"unknown family {fid!r}")
        names = [p for p in fam.params if p in r]
        chars = list(r.get("char", [0]))
        axes = [list(r[p]) for p in names] + [chars]
        for combo in itertools.product(*axes):
            *vals, ch = combo
            spec = FamilySpec.of(fid, ch, **dict(zip(names, vals)))
            yield spec, gen(spec)


def default_corpus() -> list:
    """FamilySpecs of the standard test corpus (all of dimension at most 40)."""
    S = FamilySpec.of
    out = []
    for p in (0, 2, 3, 5):
        out.append(S("KXn", p, n=3))
    out += [S("KXn", 2, n=2), S("KXn", 2, n=5), S("KXn", 5, n=5), S("KXn", 2, n=4)]
    for p in (0, 2, 3):
        out += [S("D1A1k", p, k=2), S("D1A1k", p, k=3), S("SD1A1k", p, k=2),
                S("Q1A1k", p, k=2), S("DXYmn", p, m=3, n=2), S("DXYmn", p, m=3, n=3)]
    out += [S("D1A1k", 2, k=1), S("D1A1k", 0, k=1), S("D1A1k", 5, k=2)]
    out += [S("D1A4", 2), S("D1A2k", 2, k=2, d=0), S("D1A2k", 2, k=2, d=1)]
    for p in (0, 2, 3):
        out += [S("D2Bks", p, k=2, s=2, c=1), S("SD2B1kt", p, k=1, t=2, c=0),
                S("D3Rkstu", p, k=1, s=2, t=2, u=2), S("3K", p), S("3A", p)]
    out += [S("D2Bks", 5, k=2, s=2, c=0), S("D2Bks", 0, k=3, s=3, c=0), S("TEK", 0), S("TEK", 2), S("TEK", 3)]
    out += [S("QCI", 0, n=(2, 2), q=-1), S("QCI", 5, n=(2, 2), q=2),
            S("QCI", 0, n=(3, 3), q=-1), S("QCI", 5, n=(2, 3), q=2),
            S("QCI", 5, n=(2, 2, 2), q=2), S("QCI", 2, n=(2, 2), q=1),
            S("QCI", 3, n=(3, 3), q=1)]
    out += [S("Qnm", 0, n=2, m=2), S("Qnm", 2, n=2, m=2), S("Qnm", 0, n=3, m=2),
            S("Qnm", 3, n=2, m=3)]
    return out
