"""Protograph lifting, binary expansion, and the text file formats.

A lift replaces each protomatrix entry a by a sum of a distinct
monomials x^e, e drawn from [0, N); the entry's circulant image is then
a sum of a distinct cyclic permutation matrices.  Exponents within a
cell must be pairwise distinct, otherwise terms cancel over GF(2) and
the lifted matrix no longer has the protomatrix as its weight image.

Two-step lifting first expands by N1, reinterprets the resulting binary
matrix as a new 0/1 protomatrix, and expands that by N2.  The result is
quasi-cyclic with subblock size N2 (only), which is why the intermediate
matrix is returned for inspection alongside the final lift.

File formats (whitespace separated, one matrix per file):

* weight matrix:     line 1 ``J L``; then J rows of L integers.
* polynomial matrix: line 1 ``J L N``; then J rows of L entries in the
  exponent-list grammar ("0,2" means 1 + x^2, "-" means zero).
* shift assignment:  line 1 ``J L N``; then one line ``j i e1,e2,...``
  per nonzero protomatrix cell.
* puncture set:      one line of column indices (commas or spaces);
  empty or "-" means no puncturing.
* binary matrix:     rows of whitespace separated 0/1 digits.

Parsers report the offending 1-based line number.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CancellationError, ConformanceError, ParseError, ShapeError
from .poly_ring import PolyResidue, circulant_from_poly, format_exponents, parse_exponents
from .qc_matrix import PolyMatrix, WeightMatrix

__all__ = [
    "ShiftAssignment",
    "expand",
    "expand_two_step",
    "to_binary",
    "random_shift_assignment",
    "expand_puncture",
    "parse_weight_matrix",
    "serialize_weight_matrix",
    "parse_poly_matrix",
    "serialize_poly_matrix",
    "parse_shift_assignment",
    "serialize_shift_assignment",
    "parse_puncture_set",
    "serialize_puncture_set",
    "parse_binary_matrix",
    "serialize_binary_matrix",
]


@dataclass(frozen=True)
class ShiftAssignment:
    """Per-cell exponent choices for one lifting step.

    ``cells`` maps (row, column) to the tuple of exponents for that
    cell; cells absent from the mapping are zero cells.
    """

    rows: int
    cols: int
    factor: int
    cells: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def exponents(self, j: int, i: int) -> tuple[int, ...]:
        return self.cells.get((j, i), ())

    def check_conforms(self, a: WeightMatrix) -> None:
        """Raise unless this assignment matches ``a`` cell for cell."""
        if (self.rows, self.cols) != (a.J, a.L):
            raise ConformanceError(
                f"assignment is {self.rows} x {self.cols}, protomatrix is {a.J} x {a.L}"
            )
        for (j, i) in self.cells:
            if not (0 <= j < a.J and 0 <= i < a.L):
                raise ConformanceError(f"cell ({j}, {i}) outside the protomatrix")
        for j in range(a.J):
            for i in range(a.L):
                exps = self.exponents(j, i)
                want = a[j, i]
                if len(exps) != want:
                    raise ConformanceError(
                        f"cell ({j}, {i}) has {len(exps)} exponents, protomatrix wants {want}"
                    )
                if len(set(exps)) != len(exps):
                    raise CancellationError(
                        f"cell ({j}, {i}) repeats an exponent; terms would cancel"
                    )
                for e in exps:
                    if not 0 <= e < self.factor:
                        raise ConformanceError(
                            f"cell ({j}, {i}) exponent {e} outside [0, {self.factor})"
                        )


def expand(a: WeightMatrix, shifts: ShiftAssignment) -> PolyMatrix:
    """Lift a protomatrix into a polynomial matrix over x^N - 1."""
    shifts.check_conforms(a)
    n = shifts.factor
    rows = []
    for j in range(a.J):
        row = []
        for i in range(a.L):
            bits = 0
            for e in shifts.exponents(j, i):
                bits |= 1 << e
            row.append(PolyResidue(n, bits))
        rows.append(tuple(row))
    out = PolyMatrix(n, tuple(rows))
    assert out.weight_matrix().entries == a.entries
    return out


def to_binary(h: PolyMatrix) -> np.ndarray:
    """Replace every entry by its circulant; a JN x LN binary matrix."""
    n = h.n
    out = np.zeros((h.J * n, h.L * n), dtype=np.uint8)
    for j in range(h.J):
        for i in range(h.L):
            e = h[j, i]
            if not e.is_zero:
                out[j * n : (j + 1) * n, i * n : (i + 1) * n] = circulant_from_poly(e)
    return out


def expand_two_step(
    a: WeightMatrix, first: ShiftAssignment, second: ShiftAssignment
) -> tuple[PolyMatrix, WeightMatrix]:
    """Two lifting steps; returns (final matrix, intermediate protomatrix).

    The intermediate is the binary expansion of the first lift read as a
    0/1 weight matrix; the second assignment must conform to it.
    """
    middle = to_binary(expand(a, first))
    intermediate = WeightMatrix.from_rows(middle.tolist())
    return expand(intermediate, second), intermediate


def random_shift_assignment(
    a: WeightMatrix, factor: int, seed: int | None = None
) -> ShiftAssignment:
    """Uniform distinct exponents for every cell, reproducible by seed."""
    rng = random.Random(seed)
    cells: dict[tuple[int, int], tuple[int, ...]] = {}
    for j in range(a.J):
        for i in range(a.L):
            w = a[j, i]
            if w == 0:
                continue
            if w > factor:
                raise ConformanceError(
                    f"cell ({j}, {i}) needs {w} distinct exponents, factor is {factor}"
                )
            cells[(j, i)] = tuple(sorted(rng.sample(range(factor), w)))
    return ShiftAssignment(a.J, a.L, factor, cells)


def expand_puncture(puncture: Sequence[int], factor: int) -> tuple[int, ...]:
    """Binary column indices covered by punctured subblock columns."""
    out = []
    for i in sorted(set(puncture)):
        out.extend(range(i * factor, (i + 1) * factor))
    return tuple(out)


# ---------------------------------------------------------------------------
# Text formats


def _meaningful_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s:
            out.append((lineno, s))
    return out


def _parse_header(line: str, lineno: int, fields: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != fields:
        raise ParseError(f"{what} header needs {fields} integers", line=lineno)
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"{what} header needs integers, got {line!r}", line=lineno)
    if any(v <= 0 for v in vals):
        raise ParseError(f"{what} header values must be positive", line=lineno)
    return vals


def parse_weight_matrix(text: str) -> WeightMatrix:
    lines = _meaningful_lines(text)
    if not lines:
        raise ParseError("empty weight matrix file")
    lineno, header = lines[0]
    j, l = _parse_header(header, lineno, 2, "weight matrix")
    if len(lines) - 1 != j:
        raise ParseError(
            f"expected {j} matrix rows, found {len(lines) - 1}", line=lineno
        )
    rows = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != l:
            raise ParseError(f"expected {l} entries, found {len(parts)}", line=lineno)
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"bad integer in row {line!r}", line=lineno)
        if any(v < 0 for v in row):
            raise ParseError("weight entries must be nonnegative", line=lineno)
        rows.append(row)
    return WeightMatrix.from_rows(rows)


def serialize_weight_matrix(a: WeightMatrix) -> str:
    lines = [f"{a.J} {a.L}"]
    for row in a.entries:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_poly_matrix(text: str) -> PolyMatrix:
    lines = _meaningful_lines(text)
    if not lines:
        raise ParseError("empty polynomial matrix file")
    lineno, header = lines[0]
    j, l, n = _parse_header(header, lineno, 3, "polynomial matrix")
    if len(lines) - 1 != j:
        raise ParseError(
            f"expected {j} matrix rows, found {len(lines) - 1}", line=lineno
        )
    rows = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != l:
            raise ParseError(f"expected {l} entries, found {len(parts)}", line=lineno)
        row = []
        for part in parts:
            try:
                row.append(PolyResidue(n, parse_exponents(part, n)))
            except ParseError as exc:
                raise ParseError(str(exc), line=lineno) from None
        rows.append(tuple(row))
    return PolyMatrix(n, tuple(rows))


def serialize_poly_matrix(h: PolyMatrix) -> str:
    lines = [f"{h.J} {h.L} {h.n}"]
    for row in h.entries:
        lines.append(" ".join(format_exponents(e.bits) for e in row))
    return "\n".join(lines) + "\n"


def parse_shift_assignment(text: str) -> ShiftAssignment:
    lines = _meaningful_lines(text)
    if not lines:
        raise ParseError("empty shift assignment file")
    lineno, header = lines[0]
    j, l, n = _parse_header(header, lineno, 3, "shift assignment")
    cells: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(
                "cell line must read 'row col e1,e2,...'", line=lineno
            )
        try:
            jj, ii = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"bad cell coordinates in {line!r}", line=lineno)
        if not (0 <= jj < j and 0 <= ii < l):
            raise ParseError(f"cell ({jj}, {ii}) outside {j} x {l}", line=lineno)
        if (jj, ii) in cells:
            raise ParseError(f"cell ({jj}, {ii}) listed twice", line=lineno)
        exps = []
        for p in parts[2].split(","):
            try:
                e = int(p)
            except ValueError:
                raise ParseError(f"bad exponent {p!r}", line=lineno)
            if not 0 <= e < n:
                raise ParseError(f"exponent {e} outside [0, {n})", line=lineno)
            if e in exps:
                raise ParseError(f"duplicate exponent {e} in cell", line=lineno)
            exps.append(e)
        cells[(jj, ii)] = tuple(exps)
    return ShiftAssignment(j, l, n, cells)


def serialize_shift_assignment(s: ShiftAssignment) -> str:
    lines = [f"{s.rows} {s.cols} {s.factor}"]
    for (j, i) in sorted(s.cells):
        exps = ",".join(str(e) for e in s.cells[(j, i)])
        lines.append(f"{j} {i} {exps}")
    return "\n".join(lines) + "\n"


def parse_puncture_set(text: str) -> tuple[int, ...]:
    lines = _meaningful_lines(text)
    if not lines:
        return ()
    if len(lines) > 1:
        raise ParseError("puncture set must be a single line", line=lines[1][0])
    lineno, line = lines[0]
    if line == "-":
        return ()
    out = []
    for part in line.replace(",", " ").split():
        try:
            v = int(part)
        except ValueError:
            raise ParseError(f"bad column index {part!r}", line=lineno)
        if v < 0:
            raise ParseError(f"column index {v} is negative", line=lineno)
        if v in out:
            raise ParseError(f"column index {v} listed twice", line=lineno)
        out.append(v)
    return tuple(sorted(out))


def serialize_puncture_set(puncture: Sequence[int]) -> str:
    if not puncture:
        return "-\n"
    return ",".join(str(i) for i in sorted(puncture)) + "\n"


def parse_binary_matrix(text: str) -> np.ndarray:
    lines = _meaningful_lines(text)
    if not lines:
        raise ParseError("empty binary matrix file")
    rows = []
    width = None
    for lineno, line in lines:
        parts = line.split()
        row = []
        for p in parts:
            if p not in ("0", "1"):
                raise ParseError(f"binary entries must be 0 or 1, got {p!r}", line=lineno)
            row.append(int(p))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(
                f"expected {width} entries, found {len(row)}", line=lineno
            )
        rows.append(row)
    return np.array(rows, dtype=np.uint8)


def serialize_binary_matrix(mat: np.ndarray) -> str:
    mat = np.asarray(mat)
    if mat.ndim != 2:
        raise ShapeError("binary matrix must be two dimensional")
    lines = [" ".join(str(int(v)) for v in row) for row in mat]
    return "\n".join(lines) + "\n"
