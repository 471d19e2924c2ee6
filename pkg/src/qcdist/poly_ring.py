"""Exact arithmetic in the quotient ring of binary polynomials mod x^N - 1.

A residue is stored as a packed bit mask: bit s of ``bits`` holds the
coefficient of x^s, for 0 <= s < N.  Residues are always kept fully
reduced, so ``bits`` fits in N bits; N is the modulus degree.  Residues
with different modulus degrees never interoperate; mixing them raises
``ModulusMismatchError`` rather than resizing silently.

The ring is finite and commutative, so every nonzero element is either a
unit or a zero divisor.  ``classify`` decides which by the gcd criterion
over GF(2)[x]: an element is a unit exactly when it is coprime to
x^N - 1.  The exhaustive cross-check of this criterion against a
brute-force annihilator search lives in the test suite.

The isomorphism with N x N binary right-circulant matrices follows the
left-most-column convention: coefficients in order of increasing degree
equal the entries of the first column read top to bottom.

Textual form of a residue: a comma separated list of the exponents with
nonzero coefficients ("0,2" means 1 + x^2); "-" denotes zero.  The same
grammar is used inside the polynomial-matrix file format.

Values are immutable after construction and all operations are pure, so
residues may be shared freely across parallel workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ModulusMismatchError, ParseError, ShapeError

__all__ = [
    "PolyResidue",
    "RingClass",
    "add",
    "mul",
    "weight",
    "classify",
    "monomial_inverse",
    "circulant_from_poly",
    "poly_from_circulant",
    "annihilator",
    "parse_exponents",
    "format_exponents",
]


class RingClass(Enum):
    """Coarse classification of a residue within the finite ring."""

    ZERO = "zero"
    UNIT = "unit"
    ZERO_DIVISOR = "zero-divisor"


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on plain integers (bit i = coefficient of x^i).
# Only what gcd, reduction, and exact division of divisors require.

def _poly_deg(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = _poly_deg(b)
    while a.bit_length() - 1 >= db and a:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = _poly_deg(b)
    q = 0
    while a.bit_length() - 1 >= db and a:
        shift = a.bit_length() - 1 - db
        a ^= b << shift
        q ^= 1 << shift
    return q, a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _mul_bits(a: int, b: int, n: int) -> int:
    """Product of two reduced residues, reduced mod x^n - 1.

    Shift-and-XOR over the set bits of the sparser operand; the raw
    product has degree at most 2n-2, so a single fold reduces it.
    """
    if a.bit_count() > b.bit_count():
        a, b = b, a
    acc = 0
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    return (acc & ((1 << n) - 1)) ^ (acc >> n)


# ---------------------------------------------------------------------------


def parse_exponents(text: str, n: int) -> int:
    """Parse the exponent-list grammar into a coefficient bit mask."""
    text = text.strip()
    if text == "-":
        return 0
    if not text:
        raise ParseError("empty residue literal (use '-' for zero)")
    bits = 0
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ParseError(f"empty exponent in residue literal {text!r}")
        try:
            e = int(part)
        except ValueError:
            raise ParseError(f"bad exponent {part!r} in residue literal") from None
        if not 0 <= e < n:
            raise ParseError(f"exponent {e} outside [0, {n})")
        if bits >> e & 1:
            raise ParseError(f"duplicate exponent {e} in residue literal")
        bits |= 1 << e
    return bits


def format_exponents(bits: int) -> str:
    """Render a coefficient bit mask in the exponent-list grammar."""
    if bits == 0:
        return "-"
    exps = []
    while bits:
        low = bits & -bits
        exps.append(str(low.bit_length() - 1))
        bits ^= low
    return ",".join(exps)


@dataclass(frozen=True, slots=True)
class PolyResidue:
    """An element of GF(2)[x]/<x^n - 1>, fully reduced.

    ``bits`` packs the coefficients (bit s is the coefficient of x^s)
    and must fit in ``n`` bits.
    """

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise DomainError(f"modulus degree must be positive, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise DomainError(f"coefficient mask does not fit in {self.n} bits")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "PolyResidue":
        return cls(n, 0)

    @classmethod
    def one(cls, n: int) -> "PolyResidue":
        return cls(n, 1)

    @classmethod
    def monomial(cls, exponent: int, n: int) -> "PolyResidue":
        return cls(n, 1 << (exponent % n))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], n: int) -> "PolyResidue":
        bits = 0
        for e in exponents:
            bits ^= 1 << (e % n)
        return cls(n, bits)

    @classmethod
    def parse(cls, text: str, n: int) -> "PolyResidue":
        return cls(n, parse_exponents(text, n))

    # -- basic queries ------------------------------------------------

    @property
    def weight(self) -> int:
        """Number of nonzero coefficients."""
        return self.bits.bit_count()

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def exponents(self) -> tuple[int, ...]:
        """Exponents of the nonzero terms, ascending."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def __str__(self) -> str:
        return format_exponents(self.bits)

    def __repr__(self) -> str:
        return f"PolyResidue(n={self.n}, '{format_exponents(self.bits)}')"

    # -- arithmetic ---------------------------------------------------

    def _check_modulus(self, other: "PolyResidue") -> None:
        if self.n != other.n:
            raise ModulusMismatchError(
                f"modulus degrees differ: {self.n} vs {other.n}"
            )

    def __add__(self, other: "PolyResidue") -> "PolyResidue":
        self._check_modulus(other)
        return PolyResidue(self.n, self.bits ^ other.bits)

    def __mul__(self, other: "PolyResidue") -> "PolyResidue":
        self._check_modulus(other)
        return PolyResidue(self.n, _mul_bits(self.bits, other.bits, self.n))

    # -- ring structure -----------------------------------------------

    def classify(self) -> RingClass:
        """Zero, unit, or zero divisor (gcd criterion against x^n - 1)."""
        if self.bits == 0:
            return RingClass.ZERO
        modulus = (1 << self.n) | 1
        if _poly_gcd(modulus, self.bits) == 1:
            return RingClass.UNIT
        return RingClass.ZERO_DIVISOR

    def monomial_inverse(self) -> "PolyResidue":
        """Inverse of a monomial x^i, namely x^((n - i) mod n)."""
        if self.weight != 1:
            raise DomainError(
                f"monomial_inverse needs a weight-1 residue, got weight {self.weight}"
            )
        i = self.bits.bit_length() - 1
        return PolyResidue.monomial((self.n - i) % self.n, self.n)


# ---------------------------------------------------------------------------
# Functional spellings of the core operations.


def add(a: PolyResidue, b: PolyResidue) -> PolyResidue:
    """Sum of two residues (coefficientwise XOR)."""
    return a + b


def mul(a: PolyResidue, b: PolyResidue) -> PolyResidue:
    """Product of two residues, reduced mod x^n - 1."""
    return a * b


def weight(a: PolyResidue) -> int:
    """Number of nonzero coefficients of ``a``."""
    return a.weight


def classify(a: PolyResidue) -> RingClass:
    return a.classify()


def monomial_inverse(a: PolyResidue) -> PolyResidue:
    return a.monomial_inverse()


def circulant_from_poly(a: PolyResidue) -> np.ndarray:
    """The n x n binary right-circulant matrix for ``a``.

    Column c equals the coefficient column rotated down by c, so the
    first column lists the coefficients in order of increasing degree.
    """
    col = np.zeros(a.n, dtype=np.uint8)
    for e in a.exponents():
        col[e] = 1
    mat = np.empty((a.n, a.n), dtype=np.uint8)
    for c in range(a.n):
        mat[:, c] = np.roll(col, c)
    return mat


def poly_from_circulant(mat: np.ndarray) -> PolyResidue:
    """Inverse of :func:`circulant_from_poly`; rejects non-circulants."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ShapeError(f"circulant must be square, got shape {mat.shape}")
    n = mat.shape[0]
    if n == 0:
        raise ShapeError("circulant must be nonempty")
    if not np.isin(mat, (0, 1)).all():
        raise ShapeError("circulant entries must be 0 or 1")
    col = mat[:, 0]
    for c in range(1, n):
        if not np.array_equal(mat[:, c], np.roll(col, c)):
            raise ShapeError(f"matrix is not right-circulant at column {c}")
    bits = 0
    for s in range(n):
        if col[s]:
            bits |= 1 << s
    return PolyResidue(n, bits)


def annihilator(entries: Sequence[PolyResidue], n: int) -> PolyResidue | None:
    """A nonzero residue r with r*e = 0 for every entry, or None.

    Computed in closed form: with g = gcd(x^n - 1, entries), the residue
    (x^n - 1)/g annihilates every entry, and none exists when g = 1.
    """
    modulus = (1 << n) | 1
    g = modulus
    for e in entries:
        if e.n != n:
            raise ModulusMismatchError(f"entry modulus {e.n} differs from {n}")
        if e.bits:
            g = _poly_gcd(g, e.bits)
    if g == 1:
        return None
    q, r = _poly_divmod(modulus, g)
    assert r == 0
    return PolyResidue(n, q)
