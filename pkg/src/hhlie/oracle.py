"""Brute-force derivations, used to cross-check the parallel-path computation.

A derivation of A = KQ/I is fixed by its values on vertices and arrows.  We
treat those values as unknowns in A, impose the Leibniz rule on the quiver's
defining products and the vanishing of every input relation, and solve.
Inner derivations ``ad_b`` span Inn; Der/Inn is HH^1.  The bracket is the
commutator of derivations, evaluated on full matrices over the basis of A.
Nothing here touches parallel paths or the reduced relation set.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import Path
from .errors import BracketNotClosed
from .lie import LieAlgebra, LieReport, report
from .linalg import Echelon, axpy, nullspace
from .rewriting import QuiverAlgebra

__all__ = ["LinearModel", "DerivationOracle", "OracleResult", "derivations_direct",
           "inner_direct", "hh1_direct", "der_rad_direct", "compare"]


class LinearModel:
    """Unknown values d(g) in A for every generator g (vertices, then arrows)."""

    def __init__(self, alg: QuiverAlgebra):
        self.alg = alg
        self.field = alg.field
        self.basis = alg.basis.paths
        self.bindex = alg.basis.index
        self.N = len(self.basis)
        q = alg.quiver
        self.gens = [("v", v) for v in q.vertices] + [("a", a.id) for a in q.arrows]
        self.gindex = {g: i for i, g in enumerate(self.gens)}
        self.nvars = len(self.gens) * self.N

    def var(self, g, b: int) -> int:
        return self.gindex[g] * self.N + b

    def elem(self, x: dict) -> dict:
        """Element of A (dict over paths) to basis coordinates."""
        return {self.bindex[p]: c for p, c in x.items()}

    def product(self, left: Path, b: Path, right: Path) -> dict:
        """left * b * right in A, over basis indices."""
        out = self.alg.mul_paths(left, b)
        if right is not None and out:
            res: dict = {}
            for p, c in out.items():
                axpy(res, c, self.alg.mul_paths(p, right))
            out = res
        return self.elem(out)

    def term(self, g, left, right) -> dict:
        """Linear form  d(g) -> left * d(g) * right  as {(var, out basis): coeff}."""
        out: dict = {}
        for j, b in enumerate(self.basis):
            for k, c in self.product(left, b, right).items():
                out[(self.var(g, j), k)] = c
        return out


def _rows(forms: list) -> list:
    """Turn a sum of linear forms over (var, coordinate) into one row per coordinate."""
    total: dict = {}
    for sign, f in forms:
        axpy(total, sign, f)
    rows: dict = {}
    for (v, k), c in total.items():
        rows.setdefault(k, {})[v] = c
    return list(rows.values())


class DerivationOracle:
    def __init__(self, alg: QuiverAlgebra):
        self.alg = alg
        self.model = LinearModel(alg)
        self.field = alg.field

    # -- constraints ---------------------------------------------------------

    @cached_property
    def _constraint_rows(self) -> list:
        return self._build_constraints()

    def constraints(self) -> list:
        return list(self._constraint_rows)

    def _build_constraints(self) -> list:
        m, alg, one = self.model, self.alg, self.field.one
        q = alg.quiver
        V = {v: Path.vertex(v) for v in q.vertices}
        rows: list = []
        # products of vertices
        for i in q.vertices:
            for j in q.vertices:
                gi, gj = ("v", i), ("v", j)
                # d(e_i) e_j + e_i d(e_j) = delta_ij d(e_i)
                forms = [(one, self._right(gi, V[j])),
                         (one, self._left(V[i], gj))]
                if i == j:
                    forms.append((-one, self._identity(gi)))
                rows += _rows(forms)
        # sum of the vertices is 1, whose derivative vanishes
        rows += _rows([(one, self._identity(("v", v))) for v in q.vertices])
        # e_i a = delta(i, s(a)) a and a e_j = delta(j, t(a)) a
        for a in q.arrows:
            ga, ap = ("a", a.id), alg.arrow(a.id)
            for i in q.vertices:
                forms = [(one, self._right(("v", i), ap)), (one, self._left(V[i], ga))]
                if i == a.source:
                    forms.append((-one, self._identity(ga)))
                rows += _rows(forms)
            for j in q.vertices:
                forms = [(one, self._right(ga, V[j])), (one, self._left(ap, ("v", j)))]
                if j == a.target:
                    forms.append((-one, self._identity(ga)))
                rows += _rows(forms)
        # every input relation is killed
        for r in alg.pres.relations:
            forms = []
            for path, lam in r:
                for i, a in enumerate(path.arrows):
                    left = Path(path.source, alg.quiver.arrow(a).source, path.arrows[:i])
                    right = Path(alg.quiver.arrow(a).target, path.target, path.arrows[i + 1:])
                    forms.append((lam, m.term(("a", a), left, right)))
            rows += _rows(forms)
        return [r for r in rows if r]

    def _identity(self, g) -> dict:
        return {(self.model.var(g, j), j): self.field.one for j in range(self.model.N)}

    def _right(self, g, right: Path) -> dict:
        m = self.model
        out: dict = {}
        for j, b in enumerate(m.basis):
            for k, c in m.elem(self.alg.mul_paths(b, right)).items():
                out[(m.var(g, j), k)] = c
        return out

    def _left(self, left: Path, g) -> dict:
        m = self.model
        out: dict = {}
        for j, b in enumerate(m.basis):
            for k, c in m.elem(self.alg.mul_paths(left, b)).items():
                out[(m.var(g, j), k)] = c
        return out

    # -- spaces ----------------------------------------------------------------

    @cached_property
    def der(self) -> Echelon:
        null = nullspace(self.constraints(), self.model.nvars, self.field)
        return Echelon.of(self.field, null, self.model.nvars)

    def inner_vector(self, b: Path) -> dict:
        """ad_b: g -> b g - g b, on every generator."""
        m, alg = self.model, self.alg
        out: dict = {}
        for g in m.gens:
            gp = Path.vertex(g[1]) if g[0] == "v" else alg.arrow(g[1])
            img: dict = {}
            axpy(img, self.field.one, alg.mul_paths(b, gp))
            axpy(img, -self.field.one, alg.mul_paths(gp, b))
            for p, c in img.items():
                out[m.var(g, m.bindex[p])] = c
        return out

    @cached_property
    def inn(self) -> Echelon:
        vecs = [self.inner_vector(b) for b in self.model.basis]
        inn = Echelon.of(self.field, [v for v in vecs if v], self.model.nvars)
        for row in inn.basis():
            if row not in self.der:
                raise AssertionError("an inner derivation fails the derivation constraints")
        return inn

    @cached_property
    def der_rad(self) -> Echelon:
        """Derivations whose arrow images have no vertex component."""
        m = self.model
        zero_cols = [m.var(g, j) for g in m.gens if g[0] == "a"
                     for j, b in enumerate(m.basis) if b.length == 0]
        rows = list(self.constraints()) + [{c: self.field.one} for c in zero_cols]
        null = nullspace(rows, m.nvars, self.field)
        return Echelon.of(self.field, null, m.nvars)

    # -- derivations as matrices -----------------------------------------------

    def matrix(self, d: dict) -> list:
        """Images of every basis path under the derivation ``d``, over basis indices."""
        m, alg = self.model, self.alg
        gen_val = {}
        for g in m.gens:
            base = m.var(g, 0)
            gen_val[g] = {m.basis[v - base]: c for v, c in d.items() if base <= v < base + m.N}
        cols = []
        for b in m.basis:
            img: dict = {}
            if b.length == 0:
                axpy(img, self.field.one, gen_val[("v", b.source)])
            for i, a in enumerate(b.arrows):
                arr = alg.quiver.arrow(a)
                left = Path(b.source, arr.source, b.arrows[:i])
                right = Path(arr.target, b.target, b.arrows[i + 1:])
                for p, c in gen_val[("a", a)].items():
                    for k, e in m.product(left, p, right).items():
                        axpy(img, c * e, {k: self.field.one})
            cols.append(img)
        return cols

    def commutator(self, d1: dict, d2: dict) -> dict:
        """[d1, d2] = d1 d2 - d2 d1, back in generator coordinates."""
        m, alg = self.model, self.alg
        M1, M2 = self.matrix(d1), self.matrix(d2)

        def apply(M, x):
            out: dict = {}
            for k, c in x.items():
                axpy(out, c, M[k])
            return out

        out: dict = {}
        for g in m.gens:
            gp = Path.vertex(g[1]) if g[0] == "v" else alg.arrow(g[1])
            x = {m.bindex[gp]: self.field.one}
            val = apply(M1, apply(M2, x))
            axpy(val, -self.field.one, apply(M2, apply(M1, x)))
            for k, c in val.items():
                out[m.var(g, k)] = c
        return out


@dataclass
class OracleResult:
    dim: int
    rad_dim: int
    der_dim: int
    inn_dim: int
    lie: LieReport
    rad_lie: LieReport
    algebra: LieAlgebra = dc_field(repr=False)

    @property
    def rad_equals_full(self) -> bool:
        return self.rad_dim == self.dim

    def flags(self) -> dict:
        d = self.lie.to_dict()
        d["rad_dim"] = self.rad_dim
        d["rad_equals_full"] = self.rad_equals_full
        d["rad_solvable"] = self.rad_lie.solvable
        return d


def derivations_direct(alg: QuiverAlgebra) -> Echelon:
    return DerivationOracle(alg).der


def inner_direct(alg: QuiverAlgebra) -> Echelon:
    return DerivationOracle(alg).inn


def der_rad_direct(alg: QuiverAlgebra) -> Echelon:
    return DerivationOracle(alg).der_rad


def hh1_direct(alg: QuiverAlgebra) -> OracleResult:
    o = DerivationOracle(alg)
    der, inn, F = o.der, o.inn, o.field
    red = [inn.reduce(v) for v in der.basis()]
    reps_e = Echelon.of(F, [r for r in red if r], o.model.nvars)
    piv = reps_e.pivots
    reps = [reps_e.rows[c] for c in piv]
    n = len(reps)

    def project(v):
        r = inn.reduce(v)
        try:
            co = reps_e.coordinates(r)
        except ValueError:
            raise BracketNotClosed("commutator of derivations is not a derivation") from None
        return {k: co[c] for k, c in enumerate(piv) if c in co}

    table = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            z = project(o.commutator(reps[i], reps[j]))
            table[i][j] = z
            table[j][i] = {k: -c for k, c in z.items()}
    L = LieAlgebra(F, table)
    L.check_identities()
    rad = Echelon(F)
    for v in o.der_rad.basis():
        rad.add(project(v))
    return OracleResult(n, len(rad), len(der), len(inn), report(L), report(L, rad), L)


def compare(space, lie_report: LieReport, rad_report: LieReport, result: OracleResult) -> dict:
    """Field-by-field comparison; the value is True where both sides agree."""
    mine = lie_report.to_dict()
    theirs = result.lie.to_dict()
    out = {k: mine[k] == theirs[k] for k in mine}
    out["rad_dim"] = space.radical.dim == result.rad_dim
    out["rad_solvable"] = rad_report.solvable == result.rad_lie.solvable
    out["ker_minus_im"] = space.ker_dim - space.im_dim == result.der_dim - result.inn_dim
    return out
