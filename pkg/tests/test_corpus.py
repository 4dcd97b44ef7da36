import pytest

from hhlie.corpus import FAMILIES, FamilySpec, default_corpus, family_ids, gen, sweep
from hhlie.errors import BadParameters
from hhlie.rewriting import QuiverAlgebra


def test_default_corpus_builds():
    specs = default_corpus()
    assert len({s.label for s in specs}) == len(specs)
    for s in specs:
        assert QuiverAlgebra(gen(s)).dim <= 40, s.label


def test_sweep_counts_and_order():
    got = list(sweep({"D1A1k": {"k": [2, 3, 4], "char": [0, 2]}}))
    assert len(got) == 6
    assert [s.kwargs["k"] for s, _ in got] == [2, 2, 3, 3, 4, 4]
    got = list(sweep({"KXn": {"n": [2, 3]}, "3K": {"char": [0, 3]}}))
    assert len(got) == 4
    assert list(sweep({"KXn": {"n": []}})) == []
    with pytest.raises(BadParameters):
        list(sweep({"nope": {}}))


@pytest.mark.parametrize("fid, char, kw", [
    ("D1A1k", 0, dict(k=0)), ("D1A1k", 0, dict(j=2)), ("D1A1k", 4, dict(k=2)),
    ("D2Bks", 0, dict(k=2, s=1, c=0)), ("nope", 0, {}), ("KXn", 0, {}),
])
def test_bad_parameters(fid, char, kw):
    with pytest.raises(BadParameters):
        gen(FamilySpec.of(fid, char, **kw))


def test_dimensions():
    for k in (1, 2, 3):
        assert QuiverAlgebra(gen(FamilySpec.of("D1A1k", 0, k=k))).dim == 4 * k
    for n in ((2, 2), (2, 3), (3, 3, 2)):
        expect = 1
        for m in n:
            expect *= m
        assert QuiverAlgebra(gen(FamilySpec.of("QCI", 5, n=n, q=2))).dim == expect
    assert QuiverAlgebra(gen(FamilySpec.of("KXn", 3, n=5))).dim == 5


def test_labels_and_ids():
    assert set(family_ids()) == set(FAMILIES)
    assert FamilySpec.of("D1A1k", 2, k=2).label == FamilySpec.of("D1A1k", 2, k=2).label
    assert FamilySpec.of("D1A1k", 2, k=2) != FamilySpec.of("D1A1k", 3, k=2)
