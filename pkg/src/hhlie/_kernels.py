"""Dense row reduction over GF(p).

Two interchangeable implementations of the same kernel live here: a numba
``@njit`` loop and a vectorised numpy fallback.  The numba path is used when
numba imports cleanly and ``HHLIE_DISABLE_NUMBA`` is not set to a true value.
Matrices are int64 with entries in ``[0, p)``; ``p`` must be below 2**31 so
that a product of two residues fits in an int64.
"""

from __future__ import annotations

import os

import numpy as np

MAX_PRIME = 2**31

_flag = os.environ.get("HHLIE_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag in ("1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError("disabled by HHLIE_DISABLE_NUMBA")
    from numba import njit
except ImportError:  # pragma: no cover - depends on environment
    njit = None

HAVE_NUMBA = njit is not None


def rref_modp_numpy(matrix: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of ``matrix`` mod ``p`` (numpy fallback).

    Returns ``(rows, pivots)`` where ``rows`` holds only the nonzero rows.
    """
    m = np.array(matrix, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r].copy(), np.array(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod(a, p):
        # extended Euclid; a is a nonzero residue
        t, new_t = 0, 1
        r, new_r = p, a
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_modp_jit(m, p):
        nrows, ncols = m.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            k = -1
            for i in range(r, nrows):
                if m[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(ncols):
                    tmp = m[r, j]
                    m[r, j] = m[k, j]
                    m[k, j] = tmp
            inv = _inv_mod(m[r, c], p)
            for j in range(c, ncols):
                m[r, j] = (m[r, j] * inv) % p
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i, c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    v = (m[i, j] - f * m[r, j]) % p
                    if v < 0:
                        v += p
                    m[i, j] = v
            pivots[r] = c
            r += 1
        return r, pivots

    def rref_modp_numba(matrix: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
        """Reduced row echelon form of ``matrix`` mod ``p`` (numba kernel)."""
        m = np.array(matrix, dtype=np.int64) % p
        if m.size == 0:
            return m[:0].copy(), np.zeros(0, dtype=np.int64)
        rank, pivots = _rref_modp_jit(m, np.int64(p))
        return m[:rank].copy(), pivots[:rank].copy()

else:  # pragma: no cover
    rref_modp_numba = None


def rref_modp(matrix: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    if not 2 <= p < MAX_PRIME:
        raise ValueError(f"prime {p} outside the supported range [2, 2**31)")
    if HAVE_NUMBA:
        return rref_modp_numba(matrix, p)
    return rref_modp_numpy(matrix, p)


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
