"""Polynomial parity-check matrices, weight matrices, and permanents.

A ``PolyMatrix`` is a J x L matrix over GF(2)[x]/<x^N - 1>; its entrywise
weight image is a ``WeightMatrix`` of nonnegative integers, which doubles
as the protomatrix of a protograph-based code.  Column index sets select
submatrices; permanents over both the ring and the integers drive the
codeword constructions and distance bounds in the sibling modules.

Permanents are computed by recursive cofactor expansion along the
sparsest remaining row, skipping zero entries, with memoization keyed by
the (row set, column set) pair.  Integer permanents use Python's
unbounded integers, so overflow cannot occur; a bounded fast path for the
hot enumeration loops lives in ``_fastperm`` and is guarded by an exact
a-priori bound.

Matrices are immutable after construction; permanent evaluation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ModulusMismatchError, ShapeError
from .poly_ring import PolyResidue, RingClass, _mul_bits, annihilator

__all__ = [
    "WeightMatrix",
    "PolyMatrix",
    "index_set",
    "drop",
    "weight_matrix",
    "perm_int",
    "perm_ring",
    "int_permanent_bound",
    "is_invertible",
    "dependent_row_witness",
]


# ---------------------------------------------------------------------------
# Index sets


def index_set(values: Iterable[int], size: int, what: str = "index") -> tuple[int, ...]:
    """Sorted duplicate-free tuple of indices, all within [0, size)."""
    out = tuple(sorted(values))
    for i, v in enumerate(out):
        if not 0 <= v < size:
            raise ShapeError(f"{what} {v} outside [0, {size})")
        if i and out[i - 1] == v:
            raise ShapeError(f"duplicate {what} {v}")
    return out


def drop(s: Sequence[int], member: int) -> tuple[int, ...]:
    """The set s with one member removed (by value)."""
    if member not in s:
        raise ShapeError(f"{member} is not a member of {tuple(s)}")
    return tuple(v for v in s if v != member)


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True, slots=True)
class WeightMatrix:
    """J x L matrix of nonnegative integers; also used as a protomatrix."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ShapeError("weight matrix must have at least one row and column")
        width = len(self.entries[0])
        for j, row in enumerate(self.entries):
            if len(row) != width:
                raise ShapeError(f"row {j} has {len(row)} entries, expected {width}")
            for v in row:
                if not isinstance(v, int) or v < 0:
                    raise ShapeError(f"entry {v!r} at row {j} is not a nonnegative int")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "WeightMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def J(self) -> int:
        return len(self.entries)

    @property
    def L(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ji: tuple[int, int]) -> int:
        j, i = ji
        return self.entries[j][i]

    def row(self, j: int) -> tuple[int, ...]:
        return self.entries[j]

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.entries)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.entries))

    def select_columns(self, cols: Sequence[int]) -> "WeightMatrix":
        cols = index_set(cols, self.L, "column")
        return WeightMatrix(tuple(tuple(row[i] for i in cols) for row in self.entries))

    def select_rows(self, rows: Sequence[int]) -> "WeightMatrix":
        rows = index_set(rows, self.J, "row")
        return WeightMatrix(tuple(self.entries[j] for j in rows))

    def remove_rows(self, rows: Sequence[int]) -> "WeightMatrix":
        gone = set(index_set(rows, self.J, "row"))
        if len(gone) >= self.J:
            raise ShapeError("cannot remove every row")
        return WeightMatrix(
            tuple(r for j, r in enumerate(self.entries) if j not in gone)
        )

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def is_type1(self) -> bool:
        """True when every entry is 0 or 1 (no parallel edges)."""
        return all(v in (0, 1) for row in self.entries for v in row)


@dataclass(frozen=True, slots=True)
class PolyMatrix:
    """J x L matrix over GF(2)[x]/<x^n - 1>, all entries sharing ``n``."""

    n: int
    entries: tuple[tuple[PolyResidue, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ShapeError("polynomial matrix must have at least one row and column")
        width = len(self.entries[0])
        for j, row in enumerate(self.entries):
            if len(row) != width:
                raise ShapeError(f"row {j} has {len(row)} entries, expected {width}")
            for e in row:
                if e.n != self.n:
                    raise ModulusMismatchError(
                        f"entry at row {j} has modulus {e.n}, matrix has {self.n}"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[PolyResidue]], n: int) -> "PolyMatrix":
        return cls(n, tuple(tuple(row) for row in rows))

    @classmethod
    def from_bit_rows(cls, rows: Iterable[Iterable[int]], n: int) -> "PolyMatrix":
        return cls(
            n, tuple(tuple(PolyResidue(n, bits) for bits in row) for row in rows)
        )

    @property
    def J(self) -> int:
        return len(self.entries)

    @property
    def L(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ji: tuple[int, int]) -> PolyResidue:
        j, i = ji
        return self.entries[j][i]

    def row(self, j: int) -> tuple[PolyResidue, ...]:
        return self.entries[j]

    def bit_rows(self) -> list[list[int]]:
        """Coefficient masks of all entries; cheap view for inner loops."""
        return [[e.bits for e in row] for row in self.entries]

    def select_columns(self, cols: Sequence[int]) -> "PolyMatrix":
        cols = index_set(cols, self.L, "column")
        return PolyMatrix(
            self.n, tuple(tuple(row[i] for i in cols) for row in self.entries)
        )

    def select_rows(self, rows: Sequence[int]) -> "PolyMatrix":
        rows = index_set(rows, self.J, "row")
        return PolyMatrix(self.n, tuple(self.entries[j] for j in rows))

    def remove_rows(self, rows: Sequence[int]) -> "PolyMatrix":
        gone = set(index_set(rows, self.J, "row"))
        if len(gone) >= self.J:
            raise ShapeError("cannot remove every row")
        return PolyMatrix(
            self.n, tuple(r for j, r in enumerate(self.entries) if j not in gone)
        )

    def stack_row_on_top(self, row: Sequence[PolyResidue]) -> "PolyMatrix":
        row = tuple(row)
        if len(row) != self.L:
            raise ShapeError(f"stacked row has {len(row)} entries, expected {self.L}")
        return PolyMatrix(self.n, (row,) + self.entries)

    def weight_matrix(self) -> WeightMatrix:
        return WeightMatrix(
            tuple(tuple(e.weight for e in row) for row in self.entries)
        )


def weight_matrix(h: PolyMatrix) -> WeightMatrix:
    """Entrywise weight image of a polynomial matrix."""
    return h.weight_matrix()


# ---------------------------------------------------------------------------
# Permanents


def _square_rows(matrix) -> tuple[int, list]:
    if isinstance(matrix, WeightMatrix):
        rows = [list(r) for r in matrix.entries]
    elif isinstance(matrix, PolyMatrix):
        raise TypeError("use perm_ring for polynomial matrices")
    else:
        rows = [list(r) for r in matrix]
    j = len(rows)
    for r in rows:
        if len(r) != j:
            raise ShapeError(f"permanent needs a square matrix, got {j} x {len(r)}")
    return j, rows


def _perm_int_rows(rows: Sequence[Sequence[int]]) -> int:
    """Exact permanent of square integer rows; see :func:`perm_int`."""
    j = len(rows)
    if j == 0:
        return 1
    support = [sum(1 << c for c, v in enumerate(row) if v) for row in rows]
    memo: dict[tuple[int, int], int] = {}

    def rec(rows_mask: int, cols_mask: int) -> int:
        if rows_mask == 0:
            return 1
        key = (rows_mask, cols_mask)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best_r = -1
        best_nz = -1
        best_count = 1 << 30
        rm = rows_mask
        while rm:
            low = rm & -rm
            r = low.bit_length() - 1
            rm ^= low
            nz = support[r] & cols_mask
            count = nz.bit_count()
            if count < best_count:
                best_r, best_nz, best_count = r, nz, count
                if count == 0:
                    break
        if best_count == 0:
            memo[key] = 0
            return 0
        row = rows[best_r]
        sub_rows = rows_mask ^ (1 << best_r)
        total = 0
        nz = best_nz
        while nz:
            low = nz & -nz
            c = low.bit_length() - 1
            nz ^= low
            total += row[c] * rec(sub_rows, cols_mask ^ low)
        memo[key] = total
        return total

    full = (1 << j) - 1
    return rec(full, full)


def perm_int(matrix: WeightMatrix | Sequence[Sequence[int]]) -> int:
    """Permanent of a square integer matrix, exact.

    Cofactor expansion along the sparsest remaining row with zero
    skipping; sub-permanents are memoized on the (rows, columns) pair.
    Python integers keep the result exact at any size.  The permanent of
    the empty 0 x 0 matrix is 1.
    """
    j, rows = _square_rows(matrix)
    return _perm_int_rows(rows)


def _perm_ring_bits(rows: Sequence[Sequence[int]], n: int) -> int:
    """Ring permanent on raw coefficient masks; see :func:`perm_ring`."""
    j = len(rows)
    if j == 0:
        return 1
    support = [sum(1 << c for c, v in enumerate(row) if v) for row in rows]
    memo: dict[tuple[int, int], int] = {}

    def rec(rows_mask: int, cols_mask: int) -> int:
        if rows_mask == 0:
            return 1
        key = (rows_mask, cols_mask)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best_r = -1
        best_nz = -1
        best_count = 1 << 30
        rm = rows_mask
        while rm:
            low = rm & -rm
            r = low.bit_length() - 1
            rm ^= low
            nz = support[r] & cols_mask
            count = nz.bit_count()
            if count < best_count:
                best_r, best_nz, best_count = r, nz, count
                if count == 0:
                    break
        if best_count == 0:
            memo[key] = 0
            return 0
        row = rows[best_r]
        sub_rows = rows_mask ^ (1 << best_r)
        total = 0
        nz = best_nz
        while nz:
            low = nz & -nz
            c = low.bit_length() - 1
            nz ^= low
            sub = rec(sub_rows, cols_mask ^ low)
            if sub:
                total ^= _mul_bits(row[c], sub, n)
        memo[key] = total
        return total

    full = (1 << j) - 1
    return rec(full, full)


def perm_ring(matrix: PolyMatrix) -> PolyResidue:
    """Permanent of a square matrix over GF(2)[x]/<x^n - 1>.

    Same sparsest-row cofactor expansion as :func:`perm_int`; over a
    characteristic-two ring the permanent coincides with the determinant.
    """
    if not isinstance(matrix, PolyMatrix):
        raise TypeError("perm_ring needs a PolyMatrix")
    j = matrix.J
    if matrix.L != j:
        raise ShapeError(f"permanent needs a square matrix, got {j} x {matrix.L}")
    return PolyResidue(matrix.n, _perm_ring_bits(matrix.bit_rows(), matrix.n))


def int_permanent_bound(matrix: WeightMatrix | Sequence[Sequence[int]]) -> int:
    """Product of row sums (each at least 1): an upper bound on the
    permanent of the matrix and of every submatrix obtained by deleting
    matching rows and columns.  Used to gate fixed-width fast paths."""
    if isinstance(matrix, WeightMatrix):
        rows = matrix.entries
    else:
        rows = [tuple(r) for r in matrix]
    bound = 1
    for row in rows:
        bound *= max(1, sum(row))
    return bound


# ---------------------------------------------------------------------------
# Ring-matrix structure diagnostics


def is_invertible(matrix: PolyMatrix) -> bool:
    """True when the matrix is a unit over the ring.

    A square matrix over a commutative ring with unity is invertible
    exactly when its determinant is a unit; over this characteristic-two
    ring the determinant equals the permanent.
    """
    return perm_ring(matrix).classify() is RingClass.UNIT


def dependent_row_witness(
    matrix: PolyMatrix,
) -> tuple[int, PolyResidue] | None:
    """A single-row dependence witness, if one exists.

    Returns (row index, nonzero multiplier r) with r * row = 0, the
    simplest form of row dependence.  Dependence involving several rows
    is not searched for, so None does not certify independence.
    """
    for j in range(matrix.J):
        r = annihilator(matrix.row(j), matrix.n)
        if r is not None:
            return j, r
    return None
