import pytest

from conftest import analysis, family
from hhlie.algebra import Path, make_presentation
from hhlie.cohomology import (CochainComplex, delta0, delta1, grading, hh1,
                              hh1_rad, im_delta0, ker_delta1, sigma, substitute)
from hhlie.corpus import FamilySpec, default_corpus
from hhlie.errors import NotGraded, NotParallel
from hhlie.linalg import Field
from hhlie.oracle import hh1_direct
from hhlie.rewriting import QuiverAlgebra


def kx(n, p=0):
    return QuiverAlgebra(make_presentation(Field(p), ["e"], [("x", "e", "e")],
                                           [[(1, ("x",) * n)]]))


def x(n):
    return Path("e", "e", ("x",) * n)


KRON = QuiverAlgebra(make_presentation(Field(0), ["1", "2"], [("a", "1", "2"), ("b", "1", "2")], []))


def test_substitute_examples():
    A = kx(5)
    assert substitute(A, x(3), "x", x(2)) == {x(4): 3}
    assert substitute(A, x(2), "x", x(0)) == {x(1): 2}
    assert substitute(KRON, Path("1", "2", ("a",)), "b", Path("1", "2", ("a",))) == {}
    with pytest.raises(NotParallel):
        substitute(KRON, Path("1", "2", ("a",)), "a", Path.vertex("1"))


def test_delta0_examples():
    assert not delta0(kx(3), "e", x(1))
    d = delta0(KRON, "1", Path.vertex("1"))
    a, b = Path("1", "2", ("a",)), Path("1", "2", ("b",))
    assert set(d.pairs()) == {("a", a), ("b", b)}
    cx = CochainComplex(KRON)
    total: dict = {}
    for v in KRON.quiver.vertices:
        for k, c in cx.delta0_coords(cx.c0.index[(v, Path.vertex(v))]).items():
            total[k] = total.get(k, 0) + c
    assert not any(total.values())


def test_delta1_examples():
    d = delta1(kx(3), "x", x(0))
    assert list(d) == [((0, x(2)), 3)]
    assert not delta1(kx(3, 3), "x", x(0))
    qci = analysis(FamilySpec.of("QCI", 0, n=(2, 2), q=2)).alg
    img = delta1(qci, "X1", Path.vertex("e"))
    assert any(p == Path("e", "e", ("X2",)) and c for (_, p), c in img)


def test_kernel_and_image_examples():
    A = kx(3)
    assert sorted(str(v) for v in ker_delta1(A)) == ["x||x", "x||x^2"]
    assert im_delta0(A) == []
    assert len(ker_delta1(KRON)) == 4 and len(im_delta0(KRON)) == 1


def test_hh1_dimensions():
    # values produced by the derivation oracle
    assert hh1(kx(3)).dim == 2
    assert hh1(kx(3, 3)).dim == 3
    assert family("D1A1k", 2, k=1).space.dim == 8
    for alg in (kx(3), kx(3, 3), KRON):
        assert hh1(alg).dim == hh1_direct(alg).dim


def test_sigma_examples():
    sp = hh1(kx(3))
    assert sigma(sp, 0).labels() == []
    assert sigma(sp, 1).labels() == ["x||x"]
    assert sigma(sp, 2).labels() == ["x||x^2"]
    for n in (3, 5):
        A = family("KXn", 2, n=n)
        assert len(A.sigma(0)) == 0 and len(A.truncation(2).sigma(0)) > 0
    qci = family("QCI", 5, n=(2, 3), q=2)
    assert not [(a, p) for a, p in qci.sigma(1) if p.arrows[0] != a]


def test_grading():
    g = grading(hh1(kx(3)))
    assert g.dims == {1: 1, 2: 1}
    assert family("D1A1k", 0, k=2).space.graded is not None
    with pytest.raises(NotGraded):
        grading(family("SD1A1k", 0, k=2).space)


def test_radical_part():
    assert hh1_rad(hh1(kx(3))).equals_full
    for p in (3, 5):
        r = hh1_rad(hh1(kx(p, p)))
        assert not r.equals_full and r.codim == 1
    assert family("3K", 2).space.radical.equals_full


def test_char0_radical_is_everything():
    for spec in default_corpus():
        if spec.char == 0:
            assert analysis(spec).space.radical.equals_full, spec.label


def test_representative_rendering():
    sp = hh1(kx(3, 3))
    assert [str(r) for r in sp.representatives()] == ["x||e", "x||x", "x||x^2"]


def test_complex_is_a_complex_and_rad_matches_oracle():
    for spec in default_corpus():
        A = analysis(spec)
        cx = A.space.complex
        assert all(not cx.apply_delta1(v) for v in cx.delta0_images), spec.label
        assert A.space.radical.dim == hh1_direct(A.alg).rad_dim, spec.label
