"""Explicit low-weight codewords of QC codes from submatrix permanents.

Given a J x L polynomial parity-check matrix H(x) and a size-(J+1)
column set S, the vector whose entry i is the permanent of H with the
columns S minus i (and zero outside S) is always a codeword: the inner
product with any parity row equals the permanent of a square matrix with
a repeated row, which vanishes over this characteristic-two ring.

Punctured positions carry the distinct marker ``PUNCTURED`` (never the
zero residue) so that weight accounting and dimensionality diagnostics
stay unambiguous; the marker weighs nothing.  A row-removed variant
deletes the rows in a set T first, which is valid whenever every removed
row passes the stacking test below; the test is always evaluated at
runtime rather than trusted.

Serialized form: one line per subblock in the exponent-list grammar,
with the literal ``phi`` for punctured subblocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ModulusMismatchError, ParseError, PreconditionError, ShapeError
from .poly_ring import PolyResidue, format_exponents, parse_exponents
from .qc_matrix import PolyMatrix, drop, index_set, perm_ring

__all__ = [
    "PUNCTURED",
    "QcCodeword",
    "build_codeword",
    "build_punctured_codeword",
    "build_rowremoved_codeword",
    "verify",
    "violated_rows",
]


class _PuncturedMarker:
    """Singleton marker for untransmitted subblocks."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "phi"


PUNCTURED = _PuncturedMarker()


@dataclass(frozen=True, slots=True)
class QcCodeword:
    """A length-L vector of ring subblocks, some possibly punctured."""

    n: int
    subblocks: tuple[PolyResidue | _PuncturedMarker, ...]

    def __post_init__(self) -> None:
        for i, b in enumerate(self.subblocks):
            if b is PUNCTURED:
                continue
            if not isinstance(b, PolyResidue):
                raise ShapeError(f"subblock {i} is neither a residue nor phi")
            if b.n != self.n:
                raise ModulusMismatchError(
                    f"subblock {i} has modulus {b.n}, codeword has {self.n}"
                )

    @property
    def length(self) -> int:
        return len(self.subblocks)

    @property
    def hamming_weight(self) -> int:
        """Total weight over transmitted subblocks; phi weighs nothing."""
        return sum(
            b.weight for b in self.subblocks if not isinstance(b, _PuncturedMarker)
        )

    @property
    def punctured_positions(self) -> tuple[int, ...]:
        return tuple(
            i for i, b in enumerate(self.subblocks) if isinstance(b, _PuncturedMarker)
        )

    def unpunctured(self) -> tuple[PolyResidue, ...]:
        """The underlying vector with phi read as the zero residue."""
        zero = PolyResidue.zero(self.n)
        return tuple(
            zero if isinstance(b, _PuncturedMarker) else b for b in self.subblocks
        )

    def is_blank(self) -> bool:
        """True when every subblock is zero or punctured."""
        return all(
            isinstance(b, _PuncturedMarker) or b.is_zero for b in self.subblocks
        )

    def to_text(self) -> str:
        lines = []
        for b in self.subblocks:
            lines.append("phi" if isinstance(b, _PuncturedMarker) else format_exponents(b.bits))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str, n: int) -> "QcCodeword":
        blocks: list[PolyResidue | _PuncturedMarker] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            token = raw.strip()
            if not token:
                continue
            if token == "phi":
                blocks.append(PUNCTURED)
            else:
                try:
                    blocks.append(PolyResidue(n, parse_exponents(token, n)))
                except ParseError as exc:
                    raise ParseError(str(exc), line=lineno) from None
        if not blocks:
            raise ParseError("codeword file has no subblocks")
        return cls(n, tuple(blocks))


def _puncture(blocks: Sequence[PolyResidue], puncture: Sequence[int], n: int) -> QcCodeword:
    puncture = set(puncture)
    out: list[PolyResidue | _PuncturedMarker] = []
    for i, b in enumerate(blocks):
        out.append(PUNCTURED if i in puncture else b)
    return QcCodeword(n, tuple(out))


def build_codeword(h: PolyMatrix, s: Sequence[int]) -> QcCodeword:
    """The permanent-based codeword for a size-(J+1) column set."""
    return build_rowremoved_codeword(h, s)


def build_punctured_codeword(
    h: PolyMatrix, s: Sequence[int], puncture: Sequence[int]
) -> QcCodeword:
    """As :func:`build_codeword`, with the punctured positions marked."""
    return build_rowremoved_codeword(h, s, puncture=puncture)


def build_rowremoved_codeword(
    h: PolyMatrix,
    s: Sequence[int],
    removed_rows: Sequence[int] = (),
    puncture: Sequence[int] = (),
) -> QcCodeword:
    """Codeword from column set ``s`` after deleting ``removed_rows``.

    Needs |s| = J + 1 - |removed_rows|.  Every removed row t must pass
    the stacking test: the permanent of its restriction to ``s`` stacked
    on top of the retained rows restricted to ``s`` is zero.  A failing
    row raises ``PreconditionError`` naming it.  With no removed rows
    the test is vacuous and the construction is the plain one.
    """
    s = index_set(s, h.L, "column")
    removed = index_set(removed_rows, h.J, "row")
    puncture = index_set(puncture, h.L, "puncture column")
    expected = h.J + 1 - len(removed)
    if len(s) != expected:
        raise ShapeError(
            f"column set has {len(s)} members, expected J+1-|T| = {expected}"
        )
    retained = h.remove_rows(removed) if removed else h
    for t in removed:
        stacked = retained.select_columns(s).stack_row_on_top(
            tuple(h[t, i] for i in s)
        )
        if not perm_ring(stacked).is_zero:
            raise PreconditionError(
                f"row {t} fails the removal condition for columns {s}"
            )
    zero = PolyResidue.zero(h.n)
    blocks = [zero] * h.L
    for i in s:
        blocks[i] = perm_ring(retained.select_columns(drop(s, i)))
    return _puncture(blocks, puncture, h.n)


def violated_rows(h: PolyMatrix, codeword: QcCodeword) -> tuple[int, ...]:
    """Indices of parity rows with nonzero inner product, phi read as 0."""
    if codeword.length != h.L:
        raise ShapeError(
            f"codeword has {codeword.length} subblocks, matrix has {h.L} columns"
        )
    if codeword.n != h.n:
        raise ModulusMismatchError(
            f"codeword modulus {codeword.n} differs from matrix modulus {h.n}"
        )
    blocks = codeword.unpunctured()
    bad = []
    for j in range(h.J):
        acc = PolyResidue.zero(h.n)
        for i in range(h.L):
            acc = acc + h[j, i] * blocks[i]
        if not acc.is_zero:
            bad.append(j)
    return tuple(bad)


def verify(h: PolyMatrix, codeword: QcCodeword) -> bool:
    """True when every parity row has zero inner product with the codeword."""
    return not violated_rows(h, codeword)
