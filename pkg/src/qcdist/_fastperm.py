"""Optional compiled kernel for integer permanents of small matrices.

The hot loops of the exhaustive distance bounds evaluate hundreds of
thousands of permanents of J x J nonnegative matrices.  When numba is
installed and an exact a-priori bound shows that every intermediate fits
in int64, the bounds use this kernel; otherwise they fall back to the
pure-Python unbounded path in ``qc_matrix``.  Both paths are the same
cofactor expansion with memoization, and the test suite checks them
bit-exact against each other.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised indirectly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

# Any permanent whose a-priori bound stays below this is safe in int64,
# with headroom for sums of up to 2^10 permanents on top.
INT64_SAFE_BOUND = 1 << 52

if HAVE_NUMBA:

    @njit("int64(int64[:, ::1])", cache=True)
    def _perm_dp(mat):  # pragma: no cover - compiled
        j = mat.shape[0]
        if j == 0:
            return 1
        size = 1 << j
        pc = np.zeros(size, dtype=np.int8)
        for mask in range(1, size):
            pc[mask] = pc[mask >> 1] + (mask & 1)
        # f[mask] = permanent of rows [0, popcount(mask)) on columns mask
        f = np.zeros(size, dtype=np.int64)
        f[0] = 1
        for mask in range(1, size):
            r = pc[mask] - 1
            acc = 0
            m = mask
            while m:
                low = m & (-m)
                c = 0
                t = low >> 1
                while t:
                    t >>= 1
                    c += 1
                v = mat[r, c]
                if v != 0:
                    acc += v * f[mask ^ low]
                m ^= low
            f[mask] = acc
        return f[size - 1]

    @njit("int64[:](int64[:, ::1], int32[:, ::1])", cache=True)
    def _perm_dp_batch(mat, col_sets):  # pragma: no cover - compiled
        num = col_sets.shape[0]
        j = col_sets.shape[1]
        out = np.zeros(num, dtype=np.int64)
        if j == 0:
            out[:] = 1
            return out
        size = 1 << j
        pc = np.zeros(size, dtype=np.int8)
        for m in range(1, size):
            pc[m] = pc[m >> 1] + (m & 1)
        log2 = np.zeros(size, dtype=np.int8)
        for t in range(j):
            log2[1 << t] = t
        sub = np.zeros((j, j), dtype=np.int64)
        f = np.zeros(size, dtype=np.int64)
        for s in range(num):
            for r in range(j):
                for c in range(j):
                    sub[r, c] = mat[r, col_sets[s, c]]
            f[0] = 1
            for mask in range(1, size):
                r = pc[mask] - 1
                acc = 0
                m = mask
                while m:
                    low = m & (-m)
                    v = sub[r, log2[low]]
                    if v != 0:
                        acc += v * f[mask ^ low]
                    m ^= low
                f[mask] = acc
            out[s] = f[size - 1]
        return out

    def perm_int_i64(mat: np.ndarray) -> int:
        """Permanent of a small int64 matrix; caller must pre-check the
        int64 safety bound."""
        return int(_perm_dp(np.ascontiguousarray(mat, dtype=np.int64)))

    def perm_int_i64_batch(mat: np.ndarray, col_sets: np.ndarray) -> np.ndarray:
        """Permanents of ``mat[:, cols]`` for every row of ``col_sets``.

        ``mat`` has exactly as many rows as each column set has entries;
        caller must pre-check the int64 safety bound.
        """
        return _perm_dp_batch(
            np.ascontiguousarray(mat, dtype=np.int64),
            np.ascontiguousarray(col_sets, dtype=np.int32),
        )

else:  # pragma: no cover

    def perm_int_i64(mat: np.ndarray) -> int:
        raise RuntimeError("numba is not available")

    def perm_int_i64_batch(mat: np.ndarray, col_sets: np.ndarray) -> np.ndarray:
        raise RuntimeError("numba is not available")
