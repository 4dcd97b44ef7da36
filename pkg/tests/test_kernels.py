import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hhlie import _kernels


matrices = st.tuples(st.integers(1, 8), st.integers(1, 8)).flatmap(
    lambda s: st.lists(st.lists(st.integers(0, 10**6), min_size=s[1], max_size=s[1]),
                       min_size=s[0], max_size=s[0]))


@given(matrices, st.sampled_from([2, 3, 7, 65521, 2147483647]))
def test_backends_agree(mat, p):
    m = np.array(mat, dtype=np.int64)
    a, pa = _kernels.rref_modp_numpy(m, p)
    if _kernels.rref_modp_numba is None:
        pytest.skip("numba unavailable")
    b, pb = _kernels.rref_modp_numba(m, p)
    assert np.array_equal(a, b) and np.array_equal(pa, pb)


@given(matrices, st.sampled_from([3, 5, 101]))
def test_rref_properties(mat, p):
    red, piv = _kernels.rref_modp(np.array(mat, dtype=np.int64), p)
    assert list(piv) == sorted(piv)
    for i, c in enumerate(piv):
        assert red[i, c] == 1
        assert np.count_nonzero(red[:, c]) == 1
        assert not red[i, :c].any()


def test_prime_range_checked():
    with pytest.raises(ValueError):
        _kernels.rref_modp(np.zeros((1, 1), dtype=np.int64), 2**31 + 11)


def test_env_flag_selects_numpy():
    env = dict(os.environ, HHLIE_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from hhlie import _kernels; print(_kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_results_do_not_depend_on_backend():
    code = ("from hhlie.corpus import FamilySpec, gen; from hhlie.criteria import Analysis;"
            "A = Analysis(gen(FamilySpec.of('D1A1k', 2, k=2)));"
            "print(A.space.dim, A.report.derived_dims)")
    outs = set()
    for flag in ("0", "1"):
        env = dict(os.environ, HHLIE_DISABLE_NUMBA=flag)
        outs.add(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                text=True, check=True).stdout)
    assert len(outs) == 1
