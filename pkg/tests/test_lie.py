import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import family
from hhlie.algebra import make_presentation
from hhlie.cohomology import hh1
from hhlie.lie import LieAlgebra, bracket_cochain, hh1_lie, report
from hhlie.linalg import Field, nullspace
from hhlie.rewriting import QuiverAlgebra


def matrix_lie(field, mats):
    """Structure constants of the span of integer matrices under the commutator."""
    flat = [{k: field(int(v)) for k, v in enumerate(m.ravel()) if field(int(v))} for m in mats]
    table = [[{} for _ in mats] for _ in mats]
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            c = a @ b - b @ a
            target = {k: field(int(v)) for k, v in enumerate(c.ravel()) if field(int(v))}
            co = _solve(field, flat, target)
            table[i][j] = {k: x for k, x in co.items() if x}
    return LieAlgebra(field, table)


def _solve(field, vecs, target):
    """Coefficients c with sum c_i vecs_i = target, read off a kernel vector."""
    n = len(vecs)
    cols = sorted({k for v in vecs for k in v} | set(target))
    rows = []
    for k in cols:
        row = {i: v[k] for i, v in enumerate(vecs) if k in v}
        if target.get(k):
            row[n] = -target[k]
        if row:
            rows.append(row)
    null = nullspace(rows, n + 1, field)
    sol = next(v for v in null if v.get(n))
    scale = field.one / sol[n]
    return {i: c * scale for i, c in sol.items() if i < n}


def E(i, j, n=2):
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return m


SL2 = [E(0, 0) - E(1, 1), E(0, 1), E(1, 0)]
GL2 = [E(0, 0), E(0, 1), E(1, 0), E(1, 1)]
BOREL = [E(0, 0), E(0, 1)]
HEIS = [E(0, 1, 3), E(1, 2, 3), E(0, 2, 3)]


def test_sl2_invariants():
    r = report(matrix_lie(Field(0), SL2))
    assert r.perfect and r.center_dim == 0 and list(r.derived_dims) == [3, 3]
    r2 = report(matrix_lie(Field(2), SL2))
    assert r2.center_dim == 1 and r2.solvable and r2.nilpotent


def test_small_matrix_algebras():
    gl = report(matrix_lie(Field(0), GL2))
    assert list(gl.derived_dims) == [4, 3, 3] and gl.center_dim == 1 and not gl.solvable
    b = report(matrix_lie(Field(0), BOREL))
    assert list(b.derived_dims) == [2, 1, 0] and b.strongly_solvable and not b.nilpotent
    h = report(matrix_lie(Field(5), HEIS))
    assert h.nilpotent and h.center_dim == 1 and list(h.derived_dims) == [3, 1, 0]


def test_abelian_and_zero():
    F = Field(3)
    L = LieAlgebra(F, [[{} for _ in range(4)] for _ in range(4)])
    r = report(L)
    assert r.abelian and r.nilpotent and r.center_dim == 4 and list(r.derived_dims) == [4, 0]
    z = report(LieAlgebra(F, []))
    assert z.dim == 0 and z.solvable and z.perfect


def kx(n, p=0):
    return QuiverAlgebra(make_presentation(Field(p), ["e"], [("x", "e", "e")],
                                           [[(1, ("x",) * n)]]))


def test_bracket_cochain_examples():
    sp = hh1(kx(3))
    idx = sp.complex.c1.index
    from hhlie.algebra import Path
    xx, xx2 = idx[("x", Path("e", "e", ("x",)))], idx[("x", Path("e", "e", ("x", "x")))]
    F = sp.field
    assert bracket_cochain(sp, {xx: F.one}, {xx2: F.one}) == {xx2: F.one}
    assert bracket_cochain(sp, {xx: F.one}, {xx: F.one}) == {}
    sp3 = hh1(kx(3, 3))
    idx3 = sp3.complex.c1.index
    xe, x1, x2 = (idx3[("x", Path("e", "e", ("x",) * k))] for k in (0, 1, 2))
    G = sp3.field
    assert bracket_cochain(sp3, {xe: G.one}, {x2: G.one}) == {x1: G(-1)}


def test_structure_constants_of_small_algebras():
    L = hh1_lie(hh1(kx(3)))
    assert L.dim == 2 and L.table[0][1] == {1: Field(0).one}
    r = report(hh1_lie(hh1(kx(3))))
    assert list(r.derived_dims) == [2, 1, 0] and r.strongly_solvable and not r.nilpotent
    r3 = report(hh1_lie(hh1(kx(3, 3))))
    assert r3.perfect and not r3.solvable
    kron = family("Qnm", 0, n=2, m=2)
    assert kron.report.perfect and kron.report.center_dim == 0


def test_identity_check_catches_bad_tables():
    F = Field(0)
    bad = LieAlgebra(F, [[{}, {0: F.one}], [{0: F.one}, {}]])
    with pytest.raises(AssertionError):
        bad.check_identities()
    F2 = Field(2)
    diag = LieAlgebra(F2, [[{0: F2.one}]])
    with pytest.raises(AssertionError):
        diag.check_identities()


def _transform(L, M, Minv):
    """Structure constants of L in the basis given by the rows of M."""
    F, n = L.field, L.dim
    rows = [{k: M[i][k] for k in range(n) if M[i][k]} for i in range(n)]
    table = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            z = L.bracket(rows[i], rows[j])
            out: dict = {}
            for k, c in z.items():
                for m in range(n):
                    if Minv[k][m]:
                        out[m] = out.get(m, F.zero) + c * Minv[k][m]
            table[i][j] = {k: c for k, c in out.items() if c}
    return LieAlgebra(F, table)


@given(st.sampled_from([("KXn", 3, dict(n=3)), ("D1A1k", 2, dict(k=2)), ("Qnm", 0, dict(n=2, m=2)),
                        ("TEK", 3, {}), ("QCI", 5, dict(n=(2, 3), q=2))]),
       st.integers(0, 10**6))
def test_report_invariant_under_basis_change(case, seed):
    fid, c, kw = case
    L = family(fid, c, **kw).lie
    F, n = L.field, L.dim
    rng = random.Random(seed)
    # random unitriangular times diagonal, so the inverse is easy to get exactly
    D = [F(rng.randint(1, 4)) if c else F(rng.choice([1, 2, -1, 3])) for _ in range(n)]
    D = [d if d else F.one for d in D]
    U = [[F.one if i == j else (F(rng.randint(-2, 2)) if j > i else F.zero) for j in range(n)]
         for i in range(n)]
    M = [[D[i] * U[i][j] for j in range(n)] for i in range(n)]
    # invert M by Gauss-Jordan on the augmented rows
    aug = [M[i] + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for i in reversed(range(n)):
        inv = F.one / aug[i][i]
        aug[i] = [v * inv for v in aug[i]]
        for r in range(i):
            f = aug[r][i]
            if f:
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[i])]
    Minv = [row[n:] for row in aug]
    L2 = _transform(L, M, Minv)
    L2.check_identities()
    assert report(L2) == report(L)
