"""Exact minimum distance of small binary codes, for ground truth.

Codewords are enumerated from a nullspace basis of the parity-check
matrix, held as bit-packed integers (bit i is column i).  Weights are
counted over transmitted columns only; punctured columns are masked out.
Two independent strategies are provided so that one can check the other:

* ``nullspace-gray``: basis from a left-to-right elimination, all 2^k - 1
  nonzero codewords visited by single-bit Gray-code updates;
* ``information-words``: basis from a right-to-left elimination, each
  message encoded from scratch by XOR of the selected basis rows.

The oracle refuses instances beyond its exhaustion budget (code
dimension above ``max_dimension``) instead of degrading silently.

+inf is returned when the code has no nonzero codeword, or when every
nonzero codeword has empty support on the transmitted columns; the
latter signals that puncturing collapsed the code's dimensionality.
"""

from __future__ import annotations

from math import inf
from typing import Sequence

import numpy as np

from .errors import CapacityError, DomainError, ShapeError

__all__ = [
    "MAX_DIMENSION",
    "exact_min_distance",
    "dimensionality_preserved",
    "code_dimension",
]

MAX_DIMENSION = 24

METHODS = ("nullspace-gray", "information-words")


def _bit_rows(h: np.ndarray) -> tuple[list[int], int]:
    h = np.asarray(h)
    if h.ndim != 2:
        raise ShapeError("parity-check matrix must be two dimensional")
    if not np.isin(h, (0, 1)).all():
        raise ShapeError("parity-check entries must be 0 or 1")
    ncols = h.shape[1]
    rows = []
    for r in h:
        bits = 0
        for i in np.nonzero(r)[0].tolist():
            bits |= 1 << i
        rows.append(bits)
    return rows, ncols


def _eliminate(rows: list[int], pivot_order: Sequence[int]) -> tuple[list[int], list[int]]:
    """Row reduce over GF(2) scanning pivot columns in the given order."""
    mat = [r for r in rows if r]
    reduced: list[int] = []
    pivots: list[int] = []
    for c in pivot_order:
        bit = 1 << c
        pivot_row = None
        for idx, r in enumerate(mat):
            if r & bit:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        prow = mat.pop(pivot_row)
        mat = [r ^ prow if r & bit else r for r in mat]
        reduced = [r ^ prow if r & bit else r for r in reduced]
        reduced.append(prow)
        pivots.append(c)
        mat = [r for r in mat if r]
    return reduced, pivots


def _nullspace_basis(rows: list[int], ncols: int, pivot_order: Sequence[int]) -> list[int]:
    reduced, pivots = _eliminate(rows, pivot_order)
    pivot_set = set(pivots)
    basis = []
    for f in (c for c in range(ncols) if c not in pivot_set):
        v = 1 << f
        fbit = 1 << f
        for prow, pcol in zip(reduced, pivots):
            if prow & fbit:
                v |= 1 << pcol
        basis.append(v)
    return basis


def code_dimension(h: np.ndarray) -> int:
    """n - rank(H) over GF(2)."""
    rows, ncols = _bit_rows(h)
    _, pivots = _eliminate(rows, range(ncols))
    return ncols - len(pivots)


def _check_budget(k: int, max_dimension: int) -> None:
    if k > max_dimension:
        raise CapacityError(
            f"code dimension {k} exceeds the exhaustion budget {max_dimension}"
        )


def exact_min_distance(
    h: np.ndarray,
    punctured_cols: Sequence[int] = (),
    max_dimension: int = MAX_DIMENSION,
    method: str = "nullspace-gray",
) -> int | float:
    """Exact minimum weight over nonzero codewords, masked by puncturing."""
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; use one of {METHODS}")
    rows, ncols = _bit_rows(h)
    punct = set(punctured_cols)
    for c in punct:
        if not 0 <= c < ncols:
            raise ShapeError(f"punctured column {c} outside [0, {ncols})")
    mask = 0
    for c in range(ncols):
        if c not in punct:
            mask |= 1 << c

    if method == "nullspace-gray":
        basis = _nullspace_basis(rows, ncols, range(ncols))
    else:
        basis = _nullspace_basis(rows, ncols, range(ncols - 1, -1, -1))
    k = len(basis)
    _check_budget(k, max_dimension)
    if k == 0:
        return inf

    best: int | float = inf
    if method == "nullspace-gray":
        cw = 0
        prev = 0
        for t in range(1, 1 << k):
            gray = t ^ (t >> 1)
            idx = (gray ^ prev).bit_length() - 1
            cw ^= basis[idx]
            prev = gray
            w = (cw & mask).bit_count()
            if 0 < w < best:
                best = w
    else:
        for msg in range(1, 1 << k):
            cw = 0
            m = msg
            while m:
                low = m & -m
                cw ^= basis[low.bit_length() - 1]
                m ^= low
            w = (cw & mask).bit_count()
            if 0 < w < best:
                best = w
    return best


def dimensionality_preserved(
    h: np.ndarray,
    punctured_cols: Sequence[int] = (),
    max_dimension: int = MAX_DIMENSION,
) -> bool:
    """True when restricting codewords to transmitted columns is injective,
    i.e. the punctured code keeps the full dimension."""
    rows, ncols = _bit_rows(h)
    punct = set(punctured_cols)
    for c in punct:
        if not 0 <= c < ncols:
            raise ShapeError(f"punctured column {c} outside [0, {ncols})")
    basis = _nullspace_basis(rows, ncols, range(ncols))
    k = len(basis)
    _check_budget(k, max_dimension)
    if not punct:
        return True
    mask = 0
    for c in range(ncols):
        if c not in punct:
            mask |= 1 << c
    masked = [b & mask for b in basis]
    _, pivots = _eliminate(masked, range(ncols))
    return len(pivots) == k
