import pytest

from conftest import analysis, family
from hhlie.corpus import default_corpus
from hhlie.criteria import (CriterionVerdict, RAD_FULL_CRITERIA, all_criteria, check_soundness,
                            compose, crit_char0, crit_er_loop_exponents, crit_local_two_loops,
                            crit_no_loops_no_parallels, crit_loop_deletion,
                            crit_sigma0_empty_ungraded, crit_sigma1_antisym_sigma0_empty,
                            crit_truncation_chain)
from hhlie.errors import CriterionContradiction
from hhlie.oracle import hh1_direct


def _by_id(A):
    return {v.id: v for v in all_criteria(A)}


def test_fires_implies_applicable():
    with pytest.raises(ValueError):
        CriterionVerdict("x", False, True, "solvable")
    for spec in default_corpus()[:20]:
        assert all(v.applicable for v in all_criteria(analysis(spec)) if v.fires)


def test_quiver_shape_criterion():
    assert crit_no_loops_no_parallels(family("3K", 0)).fires
    v = crit_no_loops_no_parallels(family("Qnm", 0, n=2, m=2))
    assert not v.fires and "parallel" in v.witness
    assert crit_no_loops_no_parallels(family("KXn", 0, n=3)).witness == "loop x"


def test_one_loop_graded_criteria():
    v = crit_sigma1_antisym_sigma0_empty(family("KXn", 3, n=4))
    assert v.fires
    v = crit_sigma1_antisym_sigma0_empty(family("KXn", 3, n=3))
    assert not v.fires and v.witness == "x||e in Sigma_0"
    v = crit_sigma1_antisym_sigma0_empty(family("D1A1k", 0, k=2))
    assert not v.applicable
    v = crit_sigma1_antisym_sigma0_empty(family("SD1A1k", 0, k=2))
    assert not v.applicable and "homogeneous" in v.witness


def test_two_loop_local_criteria():
    char2, other = crit_local_two_loops(family("D1A1k", 2, k=2))
    assert char2.fires and not other.applicable
    char2, other = crit_local_two_loops(family("D1A1k", 3, k=2))
    assert not char2.applicable and other.fires
    # k = 1 in characteristic 2 is the non-solvable exception; the criterion must not fire
    assert not any(v.fires for v in crit_local_two_loops(family("D1A1k", 2, k=1)))


def test_ungraded_criterion():
    v = crit_sigma0_empty_ungraded(family("Qnm", 0, n=2, m=2))
    assert not v.applicable
    assert crit_sigma0_empty_ungraded(family("KXn", 3, n=4)).fires


def test_rad_full_criteria_examples():
    assert crit_char0(family("KXn", 0, n=3)).fires
    assert not crit_char0(family("KXn", 3, n=3)).fires
    v = crit_er_loop_exponents(family("KXn", 3, n=3))
    assert not v.fires and v.witness == "n_x=3"
    assert crit_er_loop_exponents(family("KXn", 3, n=4)).fires
    assert crit_loop_deletion(family("KXn", 3, n=4)).fires
    assert crit_loop_deletion(family("DXYmn", 2, m=3, n=2)).fires


def test_loop_deletion_regressions():
    # deleting X leaves a term another unknown can cancel, so the test must not fire
    for fid, kw in (("Q1A1k", dict(k=2)), ("D1A1k", dict(k=2))):
        A = family(fid, 2, **kw)
        assert not A.space.radical.equals_full
        assert not crit_loop_deletion(A).fires


def test_rad_full_verdicts_agree_with_oracle():
    for spec in default_corpus():
        A = analysis(spec)
        full = hh1_direct(A.alg).rad_equals_full
        for c in RAD_FULL_CRITERIA:
            v = c(A)
            assert not v.fires or full, (spec.label, v.id)


def test_truncation_chain():
    A = family("KXn", 3, n=3)
    v = crit_truncation_chain(A, 2)
    assert v.fires and v.conclusion == "rad_solvable"
    with pytest.raises(ValueError):
        crit_truncation_chain(A, 4)


def test_compose():
    rad = CriterionVerdict("r", True, True, "rad_solvable")
    full = CriterionVerdict("f", True, True, "rad_equals_full")
    nofull = CriterionVerdict("f", True, False, "rad_equals_full")
    assert compose([rad, full]) == [CriterionVerdict("r+f", True, True, "solvable")]
    (v,) = compose([rad, nofull])
    assert not v.fires and v.conclusion == "solvable"
    (v,) = compose([CriterionVerdict("r", True, False, "rad_solvable"), full])
    assert not v.fires
    ids = _by_id(family("KXn", 3, n=4))
    assert ids["truncation_chain_2+loop_exponents"].fires


def test_check_soundness_raises():
    A = family("KXn", 3, n=3)  # perfect, so not solvable
    with pytest.raises(CriterionContradiction):
        check_soundness(A, [CriterionVerdict("fake", True, True, "solvable")])
    check_soundness(A, [CriterionVerdict("fake", True, False, "solvable")])
