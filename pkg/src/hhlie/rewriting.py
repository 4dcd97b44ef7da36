"""Weight orders, reduction systems, normal forms and the basis of KQ/I."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .algebra import (Path, PathSum, Presentation, ZERO, compose, parallel,
                      path_str, validate)
from .errors import (CapExceeded, IncomparablePaths, InfiniteDimensional,
                     NonTerminating, NotConfluent, ZeroElement)
from .linalg import Echelon, axpy


class WeightOrder:
    """The order <=_w on paths: weight first, then the first differing arrow.

    Arrows are compared in the base order starting from the first-traversed
    arrow.  Vertices are compared by the base order and sit below arrows.
    """

    def __init__(self, quiver, weights: Optional[dict] = None, order=None):
        self.quiver = quiver
        self.weights = {a.id: 1 for a in quiver.arrows}
        if weights:
            self.weights.update(weights)
        ids = list(order) if order else []
        verts = [x for x in ids if x in quiver.vertex_index] or list(quiver.vertices)
        arrows = [x for x in ids if x in quiver.arrow_index] or [a.id for a in quiver.arrows]
        self.rank = {v: i for i, v in enumerate(verts)}
        self.rank.update({a: len(verts) + i for i, a in enumerate(arrows)})
        self.positive = all(w > 0 for w in self.weights.values())

    @classmethod
    def for_presentation(cls, pres: Presentation) -> "WeightOrder":
        return cls(pres.quiver, dict(pres.weights or ()), pres.order)

    def weight(self, p: Path) -> int:
        w = self.weights
        return sum(w[a] for a in p.arrows)

    def key(self, p: Path):
        """Sort key; agrees with ``compare`` on every comparable pair."""
        if not p.arrows:
            return (0, 0, (self.rank[p.source],))
        r = self.rank
        return (self.weight(p), 1, tuple(r[a] for a in p.arrows))

    def compare(self, c: Path, d: Path) -> int:
        if c == d:
            return 0
        if c.is_vertex and d.is_vertex:
            return -1 if self.rank[c.source] < self.rank[d.source] else 1
        wc, wd = self.weight(c), self.weight(d)
        if wc != wd:
            return -1 if wc < wd else 1
        if c.is_vertex or d.is_vertex:
            raise IncomparablePaths(
                f"{path_str(c)} and {path_str(d)} have equal weight and one is a vertex")
        for x, y in zip(c.arrows, d.arrows):
            if x != y:
                return -1 if self.rank[x] < self.rank[y] else 1
        raise IncomparablePaths(
            f"{path_str(c)} and {path_str(d)} have equal weight and one is a prefix of the other")


def leq_omega(c: Path, d: Path, order: WeightOrder) -> int:
    """-1, 0 or 1 as c is below, equal to or above d."""
    return order.compare(c, d)


def tip(x, order: WeightOrder) -> Path:
    terms = x.terms if isinstance(x, PathSum) else x
    if not terms:
        raise ZeroElement("tip of the zero element")
    paths = list(terms)
    best = paths[0]
    for p in paths[1:]:
        if order.compare(p, best) > 0:
            best = p
    for p in paths:
        if p != best and order.compare(p, best) >= 0:
            raise IncomparablePaths(f"no maximal path in {x}")
    return best


# --- reduction systems ----------------------------------------------------

class ReductionSystem:
    """Pairs (s, f_s); normal forms use the leftmost tip occurrence."""

    MAX_STEPS = 2_000_000

    def __init__(self, field, quiver, pairs, order: WeightOrder):
        self.field = field
        self.quiver = quiver
        self.order = order
        self.pairs = tuple((s, dict(f)) for s, f in pairs)
        self.tips = {s.arrows: f for s, f in self.pairs}
        if len(self.tips) != len(self.pairs):
            raise ValueError("repeated tip in reduction system")
        self.tip_lengths = sorted({len(w) for w in self.tips})
        self._nf = {}
        self._steps = 0

    def relations(self) -> list:
        """The generating set s - f_s as path sums."""
        out = []
        for s, f in self.pairs:
            d = {s: self.field.one}
            axpy(d, -self.field.one, f)
            out.append(PathSum(self.field, d))
        return out

    def find(self, word: tuple):
        """(start, length) of the leftmost tip occurrence, or None."""
        tips = self.tips
        n = len(word)
        for i in range(n):
            for l in self.tip_lengths:
                if i + l > n:
                    break
                if word[i:i + l] in tips:
                    return i, l
        return None

    def occurrences(self, word: tuple) -> list:
        out = []
        for i in range(len(word)):
            for l in self.tip_lengths:
                if word[i:i + l] in self.tips and i + l <= len(word):
                    out.append((i, l))
        return out

    def is_irreducible(self, p: Path) -> bool:
        return self.find(p.arrows) is None

    def _splice(self, p: Path, i: int, l: int, t: Path):
        w = p.arrows
        if not t.arrows:
            new = w[:i] + w[i + l:]
        else:
            new = w[:i] + t.arrows + w[i + l:]
        if not new:
            return Path.vertex(p.source)
        return Path(p.source, p.target, new)

    def nf_path(self, p: Path) -> dict:
        """Normal form of a single path; the returned dict must not be mutated."""
        got = self._nf.get(p)
        if got is not None:
            return got
        limit = sys.getrecursionlimit()
        if limit < 20000:
            sys.setrecursionlimit(20000)
        try:
            return self._nf_rec(p)
        except RecursionError:
            raise NonTerminating(f"reduction of {path_str(p)} does not terminate") from None

    def _nf_rec(self, p: Path) -> dict:
        got = self._nf.get(p)
        if got is not None:
            return got
        hit = self.find(p.arrows)
        if hit is None:
            res = {p: self.field.one}
        else:
            self._steps += 1
            if self._steps > self.MAX_STEPS:
                raise NonTerminating("rewrite budget exhausted")
            i, l = hit
            f = self.tips[p.arrows[i:i + l]]
            res = {}
            for t, c in f.items():
                axpy(res, c, self._nf_rec(self._splice(p, i, l, t)))
        self._nf[p] = res
        return res

    def reduce_dict(self, x: dict) -> dict:
        out = {}
        for p, c in x.items():
            axpy(out, c, self.nf_path(p))
        return out

    def reduce(self, x) -> PathSum:
        if isinstance(x, Path):
            x = {x: self.field.one}
        terms = x.terms if isinstance(x, PathSum) else x
        return PathSum._from_clean(self.field, self.reduce_dict(terms))

    def reduce_with(self, x: dict, choose) -> dict:
        """Reduce using ``choose(occurrences)`` to pick the rewrite site (no memo)."""
        todo = dict(x)
        out = {}
        steps = 0
        while todo:
            p = max(todo, key=self.order.key)
            c = todo.pop(p)
            occ = self.occurrences(p.arrows)
            if not occ:
                axpy(out, c, {p: self.field.one})
                continue
            steps += 1
            if steps > self.MAX_STEPS:
                raise NonTerminating("rewrite budget exhausted")
            i, l = choose(occ)
            f = self.tips[p.arrows[i:i + l]]
            for t, e in f.items():
                axpy(todo, c * e, {self._splice(p, i, l, t): self.field.one})
        return out


def normalize_relations(pres: Presentation, order: Optional[WeightOrder] = None) -> ReductionSystem:
    """Inter-reduce the relations into a reduction system.

    Each relation is made monic in its tip and reduced by the other pairs
    until nothing changes.
    """
    order = order or WeightOrder.for_presentation(pres)
    field, quiver = pres.field, pres.quiver
    rels = [dict(r.terms) for r in pres.relations if r]

    def to_pair(r):
        s = tip(r, order)
        inv = field.one / r[s]
        f = {}
        for p, c in r.items():
            if p != s:
                f[p] = -c * inv
        return s, f

    pairs = [to_pair(r) for r in rels]
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > 10_000:
            raise NonTerminating("inter-reduction does not stabilise")
        i = 0
        while i < len(pairs):
            others = [pq for j, pq in enumerate(pairs) if j != i]
            s, f = pairs[i]
            try:
                rs = ReductionSystem(field, quiver, others, order)
            except ValueError:
                # duplicate tips among the others; resolve them first
                rs = None
            if rs is None:
                i += 1
                continue
            r = {s: field.one}
            axpy(r, -field.one, f)
            red = rs.reduce_dict(r)
            if not red:
                pairs.pop(i)
                changed = True
                continue
            new = to_pair(red)
            if new[0] != s or new[1] != f:
                pairs[i] = new
                changed = True
            i += 1
        # relations sharing a tip: subtract to expose a new tip
        seen = {}
        for i, (s, f) in enumerate(pairs):
            if s in seen:
                j = seen[s]
                d = dict(f)
                axpy(d, -field.one, pairs[j][1])
                pairs[i] = to_pair(d) if d else None
                changed = True
                break
            seen[s] = i
        pairs = [pq for pq in pairs if pq is not None]
    pairs.sort(key=lambda pq: order.key(pq[0]))
    return ReductionSystem(field, quiver, pairs, order)


@dataclass(frozen=True)
class Overlap:
    word: Path
    left: PathSum
    right: PathSum

    def __str__(self):
        return f"{path_str(self.word)}: {self.left} vs {self.right}"


def confluence_check(R: ReductionSystem) -> list:
    """Resolve every overlap of two tips; return those that disagree."""
    bad = []
    for s, fs in R.pairs:
        for t, ft in R.pairs:
            ls, lt = s.length, t.length
            for k in range(1, min(ls, lt)):
                if s.arrows[ls - k:] != t.arrows[:k]:
                    continue
                word = Path(s.source, t.target, s.arrows + t.arrows[k:])
                rest = _subpath(R.quiver, t.arrows[k:])
                head = _subpath(R.quiver, s.arrows[:ls - k])
                left = {}
                for p, c in fs.items():
                    q = compose(p, rest)
                    if q is not ZERO:
                        axpy(left, c, R.nf_path(q))
                right = {}
                for p, c in ft.items():
                    q = compose(head, p)
                    if q is not ZERO:
                        axpy(right, c, R.nf_path(q))
                if left != right:
                    bad.append(Overlap(word, PathSum._from_clean(R.field, left),
                                       PathSum._from_clean(R.field, right)))
    return bad


def _subpath(quiver, word) -> Path:
    return quiver.path(word)


# --- finite dimensionality and the basis ----------------------------------

@dataclass(frozen=True)
class FiniteCertificate:
    finite: bool
    max_length: Optional[int]
    cycle: Optional[tuple] = None  # a repeating word when infinite

    def __bool__(self):
        return self.finite


def is_finite_dimensional(R: ReductionSystem) -> FiniteCertificate:
    """Decide finiteness with the automaton of tip-avoiding words.

    A state is the longest suffix of the word read so far that is a proper
    prefix of some tip, together with the current vertex.
    """
    quiver = R.quiver
    tips = R.tips
    prefixes = set()
    for w in tips:
        for i in range(1, len(w)):
            prefixes.add(w[:i])
    out = {v: [a.id for a in quiver.out_arrows(v)] for v in quiver.vertices}
    target = {a.id: a.target for a in quiver.arrows}

    def step(state, a):
        v, u = state
        w = u + (a,)
        for i in range(len(w)):
            if w[i:] in tips:
                return None
        for i in range(len(w)):
            if w[i:] in prefixes:
                return (target[a], w[i:])
        return (target[a], ())

    # iterative DFS computing longest path; grey set detects cycles
    depth = {}
    colour = {}
    for v in quiver.vertices:
        start = (v, ())
        if start in depth:
            continue
        stack = [(start, iter(out[v]), [])]
        colour[start] = 1
        trail = [start]
        while stack:
            state, it, _ = stack[-1]
            advanced = False
            for a in it:
                nxt = step(state, a)
                if nxt is None:
                    continue
                c = colour.get(nxt)
                if c == 1:
                    i = trail.index(nxt)
                    cyc = tuple(s[1][-1] for s in trail[i + 1:] if s[1]) + (a,)
                    return FiniteCertificate(False, None, cyc)
                if c is None:
                    colour[nxt] = 1
                    trail.append(nxt)
                    stack.append((nxt, iter(out[nxt[0]]), []))
                    advanced = True
                    break
            if advanced:
                continue
            # all successors done
            d = 0
            for a in out[state[0]]:
                nxt = step(state, a)
                if nxt is not None:
                    d = max(d, depth[nxt] + 1)
            depth[state] = d
            colour[state] = 2
            stack.pop()
            trail.pop()
    return FiniteCertificate(True, max(depth[(v, ())] for v in quiver.vertices) if quiver.vertices else 0)


class BasisOfA:
    """Irreducible paths grouped by length, with an index lookup."""

    def __init__(self, levels, order: WeightOrder):
        self.levels = [sorted(lv, key=order.key) for lv in levels]
        while len(self.levels) > 1 and not self.levels[-1]:
            self.levels.pop()
        self.paths = [p for lv in self.levels for p in lv]
        self.index = {p: i for i, p in enumerate(self.paths)}

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __contains__(self, p):
        return p in self.index

    def level(self, i: int) -> list:
        return self.levels[i] if 0 <= i < len(self.levels) else []

    @property
    def max_length(self) -> int:
        return len(self.levels) - 1

    def parallel_to(self, source: str, target: str, min_length: int = 0) -> list:
        return [p for p in self.paths if p.source == source and p.target == target
                and p.length >= min_length]


def enumerate_basis(R: ReductionSystem, length_cap: Optional[int] = None,
                    certified: bool = False) -> BasisOfA:
    quiver = R.quiver
    if length_cap is None:
        cert = is_finite_dimensional(R)
        if not cert.finite:
            raise InfiniteDimensional("the algebra is infinite dimensional "
                                      f"(repeating word {' '.join(map(str, cert.cycle or ()))})")
        length_cap = cert.max_length
        certified = True
    levels = [[Path.vertex(v) for v in quiver.vertices]]
    cur = levels[0]
    tips = R.tips
    for n in range(1, length_cap + 1):
        nxt = []
        for b in cur:
            for a in quiver.out_arrows(b.target):
                w = b.arrows + (a.id,)
                if any(w[i:] in tips for i in range(len(w))):
                    continue
                nxt.append(Path(b.source, a.target, w))
        if not nxt:
            break
        levels.append(nxt)
        cur = nxt
    else:
        if cur and not certified and length_cap > 0:
            # an irreducible path of the cap length exists
            raise CapExceeded(f"irreducible paths reach the length cap {length_cap}")
    return BasisOfA(levels, R.order)


def truncate(pres: Presentation, n: int) -> Presentation:
    """Presentation of A/J(A)^n.

    Every path of length n is added as a monomial and relation terms of
    length at least n are dropped.  All paths are added, not just the
    irreducible ones, so the result is correct for non-homogeneous relations.
    """
    if n < 2:
        raise ValueError("truncation level must be at least 2")
    q = pres.quiver
    rels = []
    for r in pres.relations:
        kept = {p: c for p, c in r.terms.items() if p.length < n}
        if kept:
            rels.append(PathSum(pres.field, kept))
    level = [Path.vertex(v) for v in q.vertices]
    for _ in range(n):
        level = [Path(p.source, a.target, p.arrows + (a.id,))
                 for p in level for a in q.out_arrows(p.target)]
    rels.extend(PathSum.of(pres.field, p) for p in level)
    name = f"{pres.name}/J^{n}" if pres.name else ""
    return validate(pres.with_(relations=tuple(rels), truncation=None, name=name))


# --- the algebra with its basis -------------------------------------------

class QuiverAlgebra:
    """A validated, confluent, finite-dimensional presentation with its basis."""

    def __init__(self, pres: Presentation):
        pres = validate(pres)
        if pres.truncation:
            pres = truncate(pres, pres.truncation)
        self.pres = pres
        self.field = pres.field
        self.quiver = pres.quiver
        self.order = WeightOrder.for_presentation(pres)
        self.system = normalize_relations(pres, self.order)
        bad = confluence_check(self.system)
        if bad:
            raise NotConfluent(bad)
        cert = is_finite_dimensional(self.system)
        if not cert.finite:
            raise InfiniteDimensional("the algebra is infinite dimensional "
                                      f"(a path {'*'.join(map(str, cert.cycle or ()))} repeats forever)")
        self.finite_certificate = cert
        self.basis = enumerate_basis(self.system, cert.max_length, certified=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def relations(self) -> list:
        """The inter-reduced generating set used for cochains."""
        return self.system.relations()

    @cached_property
    def graded(self) -> bool:
        for s, f in self.system.pairs:
            if any(p.length != s.length for p in f):
                return False
        return True

    def nf(self, p: Path) -> dict:
        return self.system.nf_path(p)

    def mul_paths(self, p: Path, q: Path) -> dict:
        r = compose(p, q)
        if r is ZERO:
            return {}
        return self.system.nf_path(r)

    def mul(self, x: dict, y: dict) -> dict:
        out = {}
        for p, c in x.items():
            for q, e in y.items():
                r = compose(p, q)
                if r is not ZERO:
                    axpy(out, c * e, self.system.nf_path(r))
        return out

    def arrow(self, a: str) -> Path:
        return self.quiver.arrow_path(a)

    @cached_property
    def radical_powers(self) -> list:
        """Echelon bases of J, J^2, ... in basis coordinates, ending with 0.

        J^k is computed as the span of x*a for x in J^(k-1) and arrows a,
        which is honest even when reductions shorten paths.
        """
        idx = self.basis.index
        arrows = [self.arrow(a.id) for a in self.quiver.arrows]
        j1 = Echelon(self.field)
        for p in self.basis:
            if p.length >= 1:
                j1.add({idx[p]: self.field.one})
        powers = [j1]
        paths = self.basis.paths
        while len(powers[-1]):
            prev = powers[-1]
            nxt = Echelon(self.field)
            for row in prev.basis():
                for a in arrows:
                    v = {}
                    for i, c in row.items():
                        r = compose(paths[i], a)
                        if r is ZERO:
                            continue
                        for b, e in self.system.nf_path(r).items():
                            axpy(v, c * e, {idx[b]: self.field.one})
                    if v:
                        nxt.add(v)
            if len(nxt) == len(prev):
                raise InfiniteDimensional("radical is not nilpotent")
            powers.append(nxt)
        return powers

    def in_radical_power(self, x: dict, k: int) -> bool:
        """Whether ``x`` (dict over basis paths) lies in J^k."""
        if k <= 0:
            return True
        pw = self.radical_powers
        if k > len(pw):
            return not x
        idx = self.basis.index
        return {idx[p]: c for p, c in x.items()} in pw[k - 1]

    def loop_exponent(self, a: str) -> int:
        """Smallest n with a^n in J^(n+1)."""
        p = self.arrow(a)
        if p.source != p.target:
            raise ValueError(f"{a} is not a loop")
        n = 1
        while True:
            word = Path(p.source, p.target, (a,) * n)
            if self.in_radical_power(self.system.nf_path(word), n + 1):
                return n
            n += 1

    def element(self, x: dict) -> PathSum:
        return PathSum._from_clean(self.field, dict(x))

    def format(self, x: dict) -> str:
        from .algebra import format_sum
        return format_sum(x.items(), key=self.order.key)


def path_parallel(p: Path, q: Path) -> bool:
    return parallel(p, q)
