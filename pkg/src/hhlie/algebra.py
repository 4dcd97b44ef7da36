"""Quivers, paths, elements of the path algebra, and presentations KQ/I.

Paths are stored in traversal order: ``Path("e1", "e3", ("a", "b"))`` walks
``a`` first and then ``b``, so ``t(a) = s(b)``.  A trivial path has an empty
arrow tuple and equal endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Iterable, NamedTuple, Optional

from .errors import InputError, NonParallelRelation, ShortRelation, UnknownId
from .linalg import Field

ZERO = None  # result of composing non-composable paths


class Arrow(NamedTuple):
    id: str
    source: str
    target: str


class Path(NamedTuple):
    source: str
    target: str
    arrows: tuple

    @classmethod
    def vertex(cls, v: str) -> "Path":
        return cls(v, v, ())

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_vertex(self) -> bool:
        return not self.arrows

    def __str__(self):
        return path_str(self)


def path_str(p: Path) -> str:
    """Readable word, with runs written as powers: ``x^2*y``."""
    if not p.arrows:
        return p.source
    out = []
    prev, run = None, 0
    for a in p.arrows + (None,):
        if a == prev:
            run += 1
            continue
        if prev is not None:
            out.append(prev if run == 1 else f"{prev}^{run}")
        prev, run = a, 1
    return "*".join(out)


def compose(p: Path, q: Path) -> Optional[Path]:
    """Walk ``p`` then ``q``; ``ZERO`` if the endpoints do not meet."""
    if p.target != q.source:
        return ZERO
    if not p.arrows:
        return q
    if not q.arrows:
        return p
    return Path(p.source, q.target, p.arrows + q.arrows)


def parallel(p: Path, q: Path) -> bool:
    return p.source == q.source and p.target == q.target


class Quiver:
    """Finite quiver with ordered vertex and arrow lists."""

    def __init__(self, vertices: Iterable[str], arrows: Iterable):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) for a in arrows)
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise InputError(f"duplicate vertex id {v!r}")
            seen.add(v)
        for a in self.arrows:
            if a.id in seen:
                raise InputError(f"duplicate id {a.id!r}")
            seen.add(a.id)
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.id: i for i, a in enumerate(self.arrows)}
        self._arrow = {a.id: a for a in self.arrows}
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in self.vertex_index:
                    raise UnknownId(f"arrow {a.id!r} uses undeclared vertex {end!r}")

    def arrow(self, a: str) -> Arrow:
        try:
            return self._arrow[a]
        except KeyError:
            raise UnknownId(f"unknown arrow {a!r}") from None

    def out_arrows(self, v: str) -> list:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list:
        return [a for a in self.arrows if a.target == v]

    def loops(self, v: str) -> list:
        return [a for a in self.arrows if a.source == v and a.target == v]

    def vertex_path(self, v: str) -> Path:
        if v not in self.vertex_index:
            raise UnknownId(f"unknown vertex {v!r}")
        return Path.vertex(v)

    def arrow_path(self, a: str) -> Path:
        arr = self.arrow(a)
        return Path(arr.source, arr.target, (a,))

    def path(self, word) -> Path:
        """Path from a traversal-order word of arrow ids (or one vertex id)."""
        if isinstance(word, str):
            if word in self.vertex_index:
                return Path.vertex(word)
            word = (word,)
        word = tuple(word)
        if not word:
            raise InputError("empty word")
        arrs = [self.arrow(a) for a in word]
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise InputError(f"arrows {x.id!r} and {y.id!r} do not compose")
        return Path(arrs[0].source, arrs[-1].target, word)

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {[tuple(a) for a in self.arrows]})"


class PathSum:
    """Finite linear combination of paths with coefficients in a prime field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        d = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for p, c in items:
                c = field(c)
                if not c:
                    continue
                n = d.get(p)
                n = c if n is None else n + c
                if n:
                    d[p] = n
                else:
                    del d[p]
        self.terms = d

    @classmethod
    def _from_clean(cls, field, terms):
        obj = object.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def of(cls, field: Field, path: Path, coeff=1) -> "PathSum":
        return cls(field, {path: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def paths(self):
        return list(self.terms)

    def coeff(self, p: Path):
        return self.terms.get(p, self.field.zero)

    def _coerce(self, other):
        if isinstance(other, PathSum):
            return other
        if isinstance(other, Path):
            return PathSum.of(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = dict(self.terms)
        for p, c in o.terms.items():
            n = d.get(p)
            n = c if n is None else n + c
            if n:
                d[p] = n
            else:
                d.pop(p, None)
        return PathSum._from_clean(self.field, d)

    __radd__ = __add__

    def __neg__(self):
        return PathSum._from_clean(self.field, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scaled(self, a) -> "PathSum":
        a = self.field(a)
        if not a:
            return PathSum(self.field)
        return PathSum._from_clean(self.field, {p: a * c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (PathSum, Path)):
            o = self._coerce(other)
            d = {}
            for p, c in self.terms.items():
                for q, e in o.terms.items():
                    r = compose(p, q)
                    if r is ZERO:
                        continue
                    n = d.get(r)
                    n = c * e if n is None else n + c * e
                    if n:
                        d[r] = n
                    else:
                        del d[r]
            return PathSum._from_clean(self.field, d)
        return self.scaled(other)

    def __rmul__(self, other):
        if isinstance(other, Path):
            return PathSum.of(self.field, other) * self
        return self.scaled(other)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"PathSum({self})"

    def __str__(self):
        return format_sum(self.terms.items())


def format_scalar(c) -> str:
    return str(c)


def format_sum(items, key=None) -> str:
    items = list(items)
    if not items:
        return "0"
    if key is not None:
        items.sort(key=lambda t: key(t[0]))
    out = []
    for i, (p, c) in enumerate(items):
        s = format_scalar(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        word = p if isinstance(p, str) else path_str(p)
        body = word if s == "1" else f"{s}*{word}" if "/" not in s else f"({s})*{word}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


@dataclass(frozen=True)
class Presentation:
    """Quiver, relations and order data for an algebra KQ/I."""

    field: Field
    quiver: Quiver
    relations: tuple
    weights: Optional[tuple] = None  # ((arrow, w), ...)
    order: Optional[tuple] = None  # ids, vertices first
    truncation: Optional[int] = None
    name: str = ""
    notes: tuple = dc_field(default=(), compare=False)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def weight_map(self) -> dict:
        w = {a.id: 1 for a in self.quiver.arrows}
        if self.weights:
            w.update(dict(self.weights))
        return w

    def with_(self, **changes) -> "Presentation":
        return replace(self, **changes)


def validate(pres: Presentation) -> Presentation:
    """Check id hygiene and admissibility of the generators.

    Zero relations are dropped.  Every remaining relation must be a
    combination of parallel paths of length at least two.
    """
    q = pres.quiver
    rels = []
    for i, r in enumerate(pres.relations):
        if not isinstance(r, PathSum):
            raise InputError(f"relation {i} is not a path sum")
        r = PathSum(pres.field, r.terms)  # re-merge, drop zeros
        if not r:
            continue
        paths = r.paths()
        for p in paths:
            if p.is_vertex:
                if p.source not in q.vertex_index:
                    raise UnknownId(f"unknown vertex {p.source!r} in relation {i}")
            else:
                q.path(p.arrows)  # raises on unknown or non-composable arrows
                if q.arrow(p.arrows[0]).source != p.source or q.arrow(p.arrows[-1]).target != p.target:
                    raise InputError(f"path endpoints inconsistent in relation {i}")
            if p.length < 2:
                raise ShortRelation(f"relation {i} ({r}) involves {path_str(p)} of length {p.length}")
        p0 = paths[0]
        for p in paths[1:]:
            if not parallel(p0, p):
                raise NonParallelRelation(
                    f"relation {i} ({r}) mixes {path_str(p0)}: {p0.source}->{p0.target} "
                    f"and {path_str(p)}: {p.source}->{p.target}")
        rels.append(r)
    if pres.weights:
        for a, w in pres.weights:
            q.arrow(a)
            if not isinstance(w, int) or w < 0:
                raise InputError(f"weight of {a!r} must be a non-negative integer")
    if pres.order is not None:
        ids = list(pres.order)
        arrows = [x for x in ids if x in q.arrow_index]
        verts = [x for x in ids if x in q.vertex_index]
        unknown = [x for x in ids if x not in q.arrow_index and x not in q.vertex_index]
        if unknown:
            raise UnknownId(f"unknown id {unknown[0]!r} in order")
        if len(set(ids)) != len(ids):
            raise InputError("order lists an id twice")
        if sorted(arrows) != sorted(a.id for a in q.arrows):
            raise InputError("order must list every arrow exactly once")
        if verts and sorted(verts) != sorted(q.vertices):
            raise InputError("order must list all vertices or none")
        if verts and ids[:len(verts)] != verts:
            raise InputError("vertices must precede arrows in the order")
    if pres.truncation is not None and pres.truncation < 2:
        raise InputError("truncation level must be at least 2")
    return replace(pres, relations=tuple(rels))


@dataclass(frozen=True)
class ExtStats:
    vertices: tuple
    matrix: tuple  # matrix[i][j] = number of arrows from vertex i to vertex j

    def loops(self, v: str) -> int:
        i = self.vertices.index(v)
        return self.matrix[i][i]

    def parallel(self, s: str, t: str) -> int:
        return self.matrix[self.vertices.index(s)][self.vertices.index(t)]

    @property
    def max_loops(self) -> int:
        return max((self.matrix[i][i] for i in range(len(self.vertices))), default=0)

    @property
    def max_parallel(self) -> int:
        """Largest arrow count between distinct vertices."""
        n = len(self.vertices)
        return max((self.matrix[i][j] for i in range(n) for j in range(n) if i != j), default=0)

    @property
    def max_entry(self) -> int:
        return max((x for row in self.matrix for x in row), default=0)


def ext_quiver_stats(pres: Presentation) -> ExtStats:
    q = pres.quiver
    n = len(q.vertices)
    m = [[0] * n for _ in range(n)]
    for a in q.arrows:
        m[q.vertex_index[a.source]][q.vertex_index[a.target]] += 1
    return ExtStats(q.vertices, tuple(tuple(r) for r in m))


def make_presentation(field, vertices, arrows, relations, **kw) -> Presentation:
    """Build and validate a presentation from words.

    ``relations`` is a list of term lists ``[(coeff, word), ...]`` where each
    word is a traversal-order sequence of arrow ids.
    """
    if not isinstance(field, Field):
        field = Field(field)
    q = Quiver(vertices, arrows)
    rels = []
    for r in relations:
        rels.append(PathSum(field, [(q.path(w), c) for c, w in r]))
    return validate(Presentation(field, q, tuple(rels), **kw))
