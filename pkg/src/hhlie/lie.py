"""The bracket on HH^1 and the structure of the resulting Lie algebra.

On cochains the bracket is

    [a||h, b||q] = b||q^(a,h) - a||h^(b,q)

where ``q^(a,h)`` replaces each occurrence of ``a`` in ``q`` by ``h``.  It is
the commutator of the derivations the cochains define.  Structure constants
are computed on the echelon representatives of :class:`HH1Space` and every
bracket is projected back onto them.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .cohomology import HH1Space
from .errors import BracketNotClosed
from .linalg import Echelon, Field, axpy, nullspace

__all__ = ["bracket_cochain", "LieAlgebra", "LieReport", "structure_constants",
           "hh1_lie", "report"]


def bracket_cochain(space: HH1Space, x: dict, y: dict) -> dict:
    """Bracket of two cochains given as dicts over K(Q1||B) indices."""
    cx = space.complex
    pairs, idx = cx.c1.pairs, cx.c1.index
    out: dict = {}
    for i, c in x.items():
        a, h = pairs[i]
        for j, e in y.items():
            b, q = pairs[j]
            ce = c * e
            for path, v in cx._substitute_path(q, a, h).items():
                axpy(out, ce * v, {idx[(b, path)]: space.field.one})
            for path, v in cx._substitute_path(h, b, q).items():
                axpy(out, -ce * v, {idx[(a, path)]: space.field.one})
    return out


class LieAlgebra:
    """A finite-dimensional Lie algebra given by sparse structure constants.

    ``table[i][j]`` is a dict ``{k: c}`` with ``[e_i, e_j] = sum c e_k``.
    """

    def __init__(self, field: Field, table: list):
        self.field = field
        self.table = table
        self.dim = len(table)

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                t = row[j]
                if t:
                    axpy(out, a * b, t)
        return out

    def coords(self, i: int, j: int) -> list:
        t = self.table[i][j]
        return [t.get(k, self.field.zero) for k in range(self.dim)]

    def dense(self) -> list:
        return [[self.coords(i, j) for j in range(self.dim)] for i in range(self.dim)]

    # -- subspaces ----------------------------------------------------------

    def whole(self) -> Echelon:
        e = Echelon(self.field)
        for i in range(self.dim):
            e.add({i: self.field.one})
        return e

    def subspace(self, vecs) -> Echelon:
        e = Echelon(self.field)
        for v in vecs:
            if isinstance(v, (list, tuple)):
                v = {k: c for k, c in enumerate(v) if c}
            e.add(v)
        return e

    def commutator(self, S: Echelon, T: Echelon) -> Echelon:
        out = Echelon(self.field)
        for x in S.basis():
            for y in T.basis():
                z = self.bracket(x, y)
                if z:
                    out.add(z)
        return out

    def derived_series(self, S: Optional[Echelon] = None) -> list:
        """Subspaces L, L', L'', ... stopping at 0 or at the first repeat."""
        cur = self.whole() if S is None else S
        series = [cur]
        while len(cur):
            nxt = self.commutator(cur, cur)
            series.append(nxt)
            if len(nxt) == len(cur):
                break
            cur = nxt
        return series

    def lower_central_series(self, S: Optional[Echelon] = None) -> list:
        """S, [S,S], [S,[S,S]], ... inside S, stopping at 0 or a repeat."""
        S = self.whole() if S is None else S
        cur = S
        series = [cur]
        while len(cur):
            nxt = self.commutator(S, cur)
            series.append(nxt)
            if len(nxt) == len(cur):
                break
            cur = nxt
        return series

    def center(self, S: Optional[Echelon] = None) -> list:
        """Basis of the center of the subalgebra S (default: everything)."""
        S = self.whole() if S is None else S
        gens = S.basis()
        rows: dict = {}
        for m, s in enumerate(gens):
            for l, t in enumerate(gens):
                for k, c in self.bracket(s, t).items():
                    rows.setdefault((l, k), {})[m] = c
        null = nullspace(list(rows.values()), len(gens), self.field)
        out = []
        for v in null:
            x: dict = {}
            for m, c in v.items():
                axpy(x, c, gens[m])
            out.append(x)
        return out

    # -- identities -----------------------------------------------------------

    def _tensor(self):
        """Structure constants as an integer array, scaled for Q, plus the modulus."""
        n, p = self.dim, self.field.characteristic
        if p and 3 * n * p * p < 2**63:
            t = np.zeros((n, n, n), dtype=np.int64)
            for i in range(n):
                for j in range(n):
                    for k, c in self.table[i][j].items():
                        t[i, j, k] = c.v
            return t, p
        if p:
            t = np.zeros((n, n, n), dtype=object)
            t[...] = 0
            for i in range(n):
                for j in range(n):
                    for k, c in self.table[i][j].items():
                        t[i, j, k] = c.v
            return t, p
        den = 1
        for row in self.table:
            for d in row:
                for c in d.values():
                    den = den * c.denominator // np.gcd(den, c.denominator)
        t = np.zeros((n, n, n), dtype=object)
        t[...] = 0
        for i in range(n):
            for j in range(n):
                for k, c in self.table[i][j].items():
                    t[i, j, k] = int(c * den)
        return t, None

    def check_identities(self) -> None:
        """Assert alternation, antisymmetry and Jacobi on all basis triples."""
        n = self.dim
        if n == 0:
            return
        t, p = self._tensor()

        def zero(a):
            return not np.any(a % p if p else a)

        diag = t[np.arange(n), np.arange(n)]
        if not zero(diag):
            raise AssertionError("[x, x] != 0 for a basis element")
        if not zero(t + t.transpose(1, 0, 2)):
            raise AssertionError("bracket is not antisymmetric")
        # J[i,j,k] = [[i,j],k] + [[j,k],i] + [[k,i],j]
        first = np.tensordot(t, t, axes=([2], [0]))  # [[i,j],k] at (i,j,k,l)
        jac = first + first.transpose(1, 2, 0, 3) + first.transpose(2, 0, 1, 3)
        if not zero(jac):
            raise AssertionError("Jacobi identity fails")


def structure_constants(space: HH1Space) -> LieAlgebra:
    n = space.dim
    table = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            z = bracket_cochain(space, space.reps[i], space.reps[j])
            if space.complex.apply_delta1(z):
                raise BracketNotClosed(f"bracket of classes {i} and {j} is not a cocycle")
            try:
                coords = space.project(z)
            except ValueError:  # pragma: no cover - would contradict the line above
                raise BracketNotClosed(f"bracket of classes {i} and {j} left the kernel")
            d = {k: c for k, c in enumerate(coords) if c}
            table[i][j] = d
            table[j][i] = {k: -c for k, c in d.items()}
    return LieAlgebra(space.field, table)


def hh1_lie(space: HH1Space, check: bool = True) -> LieAlgebra:
    L = structure_constants(space)
    if check:
        L.check_identities()
        g = space.graded
        if g is not None:
            g.check_degree_bound(L.dense())
    return L


@dataclass(frozen=True)
class LieReport:
    dim: int
    derived_dims: tuple
    lcs_dims: tuple
    solvable: bool
    strongly_solvable: bool
    nilpotent: bool
    perfect: bool
    abelian: bool
    center_dim: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["derived_dims"] = list(self.derived_dims)
        d["lcs_dims"] = list(self.lcs_dims)
        return d


def report(L: LieAlgebra, S: Optional[Echelon] = None) -> LieReport:
    """Series and flags of L, or of its subalgebra S."""
    S = L.whole() if S is None else S
    derived = L.derived_series(S)
    dims = [len(x) for x in derived]
    d1 = derived[1] if len(derived) > 1 else derived[0]
    lcs = [len(x) for x in L.lower_central_series(d1)]
    own = [len(x) for x in L.lower_central_series(S)]
    return LieReport(
        dim=len(S),
        derived_dims=tuple(dims),
        lcs_dims=tuple(lcs),
        solvable=dims[-1] == 0,
        strongly_solvable=lcs[-1] == 0,
        nilpotent=own[-1] == 0,
        perfect=len(d1) == len(S),
        abelian=len(d1) == 0,
        center_dim=len(L.center(S)),
    )
