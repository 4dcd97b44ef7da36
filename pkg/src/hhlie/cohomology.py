"""The parallel-pair complex K(Q0||B) -> K(Q1||B) -> K(R||B) and HH^1.

A cochain in K(X||B) is a combination of pairs ``x||p`` where ``p`` is a basis
path parallel to ``x``.  Internally every space enumerates its pairs once and
vectors are sparse dicts over those indices; :class:`ParallelPairVector` is the
labelled form handed to callers.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional

from .algebra import Path, format_scalar, path_str
from .errors import NotGraded, NotParallel
from .linalg import Echelon, axpy, nullspace
from .rewriting import QuiverAlgebra

__all__ = [
    "ParallelPairVector", "PairSpace", "CochainComplex", "HH1Space",
    "GradedDecomposition", "RadicalPart", "substitute", "delta0", "delta1",
    "ker_delta1", "im_delta0", "hh1", "sigma", "grading", "hh1_rad",
]

Q0, Q1, REL = "K(Q0||B)", "K(Q1||B)", "K(R||B)"


@dataclass(frozen=True)
class ParallelPairVector:
    """A cochain as ``{(source item, target path): coefficient}``."""

    space: str
    terms: dict

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def pairs(self) -> list:
        return list(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, ((x, p), c) in enumerate(self.terms.items()):
            name = f"r{x}" if isinstance(x, int) else x
            mono = f"{name}||{path_str(p)}"
            s = format_scalar(c)
            if s.startswith("-"):
                sign, s = "-", s[1:]
            else:
                sign = "+"
            body = mono if s == "1" else f"{s}*{mono}" if "/" not in s else f"({s})*{mono}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)


class PairSpace:
    """Enumeration of the pairs spanning one cochain space."""

    def __init__(self, label: str, pairs: list):
        self.label = label
        self.pairs = pairs
        self.index = {pr: i for i, pr in enumerate(pairs)}

    def __len__(self):
        return len(self.pairs)

    def vector(self, v: dict) -> ParallelPairVector:
        return ParallelPairVector(self.label, {self.pairs[i]: v[i] for i in sorted(v)})

    def coords(self, x: ParallelPairVector) -> dict:
        return {self.index[pr]: c for pr, c in x.terms.items()}


def _replace(q: Path, i: int, p: Path) -> Path:
    return Path(q.source, q.target, q.arrows[:i] + p.arrows + q.arrows[i + 1:])


def substitute(alg: QuiverAlgebra, q: Path, a: str, p) -> dict:
    """Reduced sum over each occurrence of ``a`` in ``q`` replaced by ``p``.

    ``p`` is a path or a dict over paths, parallel to ``a``.  The result is a
    dict over basis paths; it is empty when ``a`` does not occur.
    """
    arr = alg.quiver.arrow(a)
    items = p.items() if isinstance(p, dict) else [(p, alg.field.one)]
    out: dict = {}
    for path, c in items:
        if path.source != arr.source or path.target != arr.target:
            raise NotParallel(f"{path_str(path)} is not parallel to {a}")
        for i, b in enumerate(q.arrows):
            if b == a:
                axpy(out, c, alg.nf(_replace(q, i, path)))
    return out


class CochainComplex:
    """The three cochain spaces of an algebra and its two differentials."""

    def __init__(self, alg: QuiverAlgebra):
        self.alg = alg
        self.field = alg.field
        B, q = alg.basis, alg.quiver
        key = alg.order.key

        def targets(s, t):
            return sorted(B.parallel_to(s, t), key=lambda p: (p.length, key(p)))

        self.c0 = PairSpace(Q0, [(v, p) for v in q.vertices for p in targets(v, v)])
        self.c1 = PairSpace(Q1, [(a.id, p) for a in q.arrows
                                 for p in targets(a.source, a.target)])
        self.rels = alg.relations
        self.rel_tips = [s for s, _ in alg.system.pairs]
        self.c2 = PairSpace(REL, [(j, p) for j, s in enumerate(self.rel_tips)
                                  for p in targets(s.source, s.target)])
        self._sub: dict = {}

    # -- differentials -----------------------------------------------------

    def delta0_coords(self, i: int) -> dict:
        v, p = self.c0.pairs[i]
        out: dict = {}
        idx = self.c1.index
        for a in self.alg.quiver.arrows:
            ap = self.alg.arrow(a.id)
            img: dict = {}
            if a.target == v:
                axpy(img, self.field.one, self.alg.mul_paths(ap, p))
            if a.source == v:
                axpy(img, -self.field.one, self.alg.mul_paths(p, ap))
            for b, c in img.items():
                out[idx[(a.id, b)]] = c
        return out

    def _substitute_path(self, q: Path, a: str, p: Path) -> dict:
        k = (q, a, p)
        r = self._sub.get(k)
        if r is None:
            r = substitute(self.alg, q, a, p)
            self._sub[k] = r
        return r

    def delta1_coords(self, i: int) -> dict:
        a, p = self.c1.pairs[i]
        out: dict = {}
        idx = self.c2.index
        for j, r in enumerate(self.rels):
            img: dict = {}
            for q, lam in r:
                if a in q.arrows:
                    axpy(img, lam, self._substitute_path(q, a, p))
            for b, c in img.items():
                out[idx[(j, b)]] = c
        return out

    def apply_delta1(self, v: dict) -> dict:
        out: dict = {}
        for i, c in v.items():
            axpy(out, c, self.delta1_column(i))
        return out

    def delta1_column(self, i: int) -> dict:
        return self._delta1_columns[i]

    @cached_property
    def _delta1_columns(self) -> list:
        return [self.delta1_coords(i) for i in range(len(self.c1))]

    @cached_property
    def delta0_images(self) -> list:
        return [self.delta0_coords(i) for i in range(len(self.c0))]

    # -- kernel and image --------------------------------------------------

    def _kernel(self, columns: list) -> list:
        rows: dict = {}
        for i in columns:
            for k, c in self.delta1_column(i).items():
                rows.setdefault(k, {})[i] = c
        local = {c: n for n, c in enumerate(columns)}
        back = list(columns)
        sub = [{local[i]: c for i, c in row.items()} for row in rows.values()]
        null = nullspace(sub, len(columns), self.field)
        return [{back[n]: c for n, c in v.items()} for v in null]

    @cached_property
    def kernel(self) -> Echelon:
        vecs = self._kernel(range(len(self.c1)))
        return Echelon.of(self.field, vecs, len(self.c1))

    @cached_property
    def image(self) -> Echelon:
        im = Echelon.of(self.field, [v for v in self.delta0_images if v], len(self.c1))
        for row in im.basis():
            # the complex property, checked on every algebra we touch
            if self.apply_delta1(row):
                raise AssertionError("delta1 o delta0 is not zero")
            for i in row:
                if self.c1.pairs[i][1].length == 0:
                    raise AssertionError("an inner derivation hits a length-0 target")
        return im


def delta0(alg: QuiverAlgebra, v: str, p: Path) -> ParallelPairVector:
    cx = CochainComplex(alg)
    return cx.c1.vector(cx.delta0_coords(cx.c0.index[(v, p)]))


def delta1(alg: QuiverAlgebra, a: str, p: Path) -> ParallelPairVector:
    cx = CochainComplex(alg)
    key = (a, p)
    if key not in cx.c1.index:
        raise NotParallel(f"{path_str(p)} is not a basis path parallel to {a}")
    return cx.c2.vector(cx.delta1_coords(cx.c1.index[key]))


class HH1Space:
    """Ker delta1 / Im delta0 with echelon-complement representatives."""

    def __init__(self, alg_or_complex):
        cx = alg_or_complex if isinstance(alg_or_complex, CochainComplex) \
            else CochainComplex(alg_or_complex)
        self.complex = cx
        self.alg = cx.alg
        self.field = cx.field
        self.kernel = cx.kernel
        self.image = cx.image
        for row in self.image.basis():
            if row not in self.kernel:
                raise AssertionError("Im delta0 is not inside Ker delta1")
        red = [self.image.reduce(k) for k in self.kernel.basis()]
        self.reps_echelon = Echelon.of(self.field, [r for r in red if r], len(cx.c1))
        self.pivots = self.reps_echelon.pivots
        self.reps = [self.reps_echelon.rows[c] for c in self.pivots]
        if len(self.reps) != len(self.kernel) - len(self.image):
            raise AssertionError("representative count disagrees with dim Ker - dim Im")

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def ker_dim(self) -> int:
        return len(self.kernel)

    @property
    def im_dim(self) -> int:
        return len(self.image)

    def project(self, v: dict) -> list:
        """Coordinates over ``reps`` of the class of a cocycle ``v``."""
        r = self.image.reduce(v)
        coords = self.reps_echelon.coordinates(r)
        return [coords.get(c, self.field.zero) for c in self.pivots]

    def lift(self, coords) -> dict:
        out: dict = {}
        for c, rep in zip(coords, self.reps):
            if c:
                axpy(out, c, rep)
        return out

    def representative(self, i: int) -> ParallelPairVector:
        return self.complex.c1.vector(self.reps[i])

    def representatives(self) -> list:
        return [self.representative(i) for i in range(self.dim)]

    def target_lengths(self, v: dict) -> set:
        pairs = self.complex.c1.pairs
        return {pairs[i][1].length for i in v}

    @cached_property
    def radical(self) -> "RadicalPart":
        return hh1_rad(self)

    @cached_property
    def graded(self) -> Optional["GradedDecomposition"]:
        try:
            return grading(self)
        except NotGraded:
            return None


def ker_delta1(alg: QuiverAlgebra) -> list:
    cx = CochainComplex(alg)
    return [cx.c1.vector(v) for v in cx.kernel.basis()]


def im_delta0(alg: QuiverAlgebra) -> list:
    cx = CochainComplex(alg)
    return [cx.c1.vector(v) for v in cx.image.basis()]


def hh1(alg: QuiverAlgebra) -> HH1Space:
    return HH1Space(alg)


# --- Sigma sets -------------------------------------------------------------

@dataclass(frozen=True)
class SigmaSet:
    index: int
    members: tuple
    # members whose coordinate is also hit by Im delta0
    image_overlap: tuple = ()

    def __contains__(self, pair):
        return pair in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def labels(self) -> list:
        return [f"{a}||{path_str(p)}" for a, p in self.members]


def sigma(space: HH1Space, i: int) -> SigmaSet:
    """Pairs a||b with b of length i occurring in some element of Ker delta1."""
    pairs = space.complex.c1.pairs
    support = set()
    for row in space.kernel.basis():
        support.update(row)
    hit = set()
    for row in space.image.basis():
        hit.update(row)
    cols = sorted(c for c in support if pairs[c][1].length == i)
    return SigmaSet(i, tuple(pairs[c] for c in cols),
                    tuple(pairs[c] for c in cols if c in hit))


# --- graded decomposition ---------------------------------------------------

@dataclass
class GradedDecomposition:
    """Pieces L_i of a graded algebra's HH^1, indexed by target length.

    ``pieces[i]`` lists the indices of HH^1 representatives in L_i;
    ``ker_dims[i]`` and ``ideal_dims[i]`` are the dimensions of the
    length-i parts of Ker delta1 and of I_i (the length-i part of Im delta0).
    """

    pieces: dict
    ker_dims: dict
    ideal_dims: dict
    degree_of: list = dc_field(default_factory=list)

    @property
    def dims(self) -> dict:
        return {i: len(v) for i, v in sorted(self.pieces.items())}

    @property
    def tail(self) -> list:
        """Representative indices spanning N, the sum of L_i for i >= 2."""
        return [k for i, v in sorted(self.pieces.items()) if i >= 2 for k in v]

    def check_degree_bound(self, structure) -> None:
        """Assert [L_i, L_j] lies in L_(i+j-1); ``structure[a][b]`` is a coordinate list."""
        deg = self.degree_of
        for a, da in enumerate(deg):
            for b, db in enumerate(deg):
                for c, x in enumerate(structure[a][b]):
                    if x and deg[c] != da + db - 1:
                        raise AssertionError(
                            f"bracket of degrees {da} and {db} has a degree {deg[c]} part")


def grading(space: HH1Space) -> GradedDecomposition:
    alg = space.alg
    if not alg.graded:
        raise NotGraded("relations are not length-homogeneous")
    pairs = space.complex.c1.pairs
    pieces: dict = {}
    degree_of = []
    for k, rep in enumerate(space.reps):
        lens = space.target_lengths(rep)
        if len(lens) != 1:
            raise AssertionError("representative of a graded algebra is not homogeneous")
        d = lens.pop()
        pieces.setdefault(d, []).append(k)
        degree_of.append(d)
    ker_dims: dict = {}
    for row in space.kernel.basis():
        d = pairs[min(row)][1].length
        ker_dims[d] = ker_dims.get(d, 0) + 1
    ideal_dims: dict = {}
    for row in space.image.basis():
        d = pairs[min(row)][1].length
        ideal_dims[d] = ideal_dims.get(d, 0) + 1
    for d in set(ker_dims) | set(ideal_dims):
        if ker_dims.get(d, 0) - ideal_dims.get(d, 0) != len(pieces.get(d, ())):
            raise AssertionError(f"dim L_{d} disagrees with Ker_{d} / I_{d}")
    if sum(len(v) for v in pieces.values()) != space.dim:
        raise AssertionError("graded pieces do not add up to HH^1")
    return GradedDecomposition(pieces, ker_dims, ideal_dims, degree_of)


# --- the radical-preserving part -------------------------------------------

@dataclass
class RadicalPart:
    """HH^1_rad inside HH^1: ``basis`` holds coordinate vectors over the reps."""

    basis: list
    representatives: list
    dim: int
    full_dim: int

    @property
    def equals_full(self) -> bool:
        return self.dim == self.full_dim

    @property
    def codim(self) -> int:
        return self.full_dim - self.dim


def hh1_rad(space: HH1Space) -> RadicalPart:
    cx = space.complex
    pairs = cx.c1.pairs
    cols = [i for i, (_, p) in enumerate(pairs) if p.length >= 1]
    vecs = cx._kernel(cols)
    red = [space.image.reduce(v) for v in vecs]
    ech = Echelon.of(space.field, [r for r in red if r], len(pairs))
    reps = ech.basis()
    for r in reps:
        if any(pairs[i][1].length == 0 for i in r):
            raise AssertionError("radical representative has a length-0 target")
    coords = Echelon(space.field)
    for r in reps:
        coords.add({k: c for k, c in enumerate(space.project(r)) if c})
    basis = [[row.get(k, space.field.zero) for k in range(space.dim)]
             for row in coords.basis()]
    return RadicalPart(basis, reps, len(basis), space.dim)
