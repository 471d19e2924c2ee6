"""Built-in matrices used by the CLI, the docs, and the test suite.

The AR4JA family is the protograph family standardized by CCSDS for
deep-space links; its protomatrices are shipped here together with the
factor-4 lift of the rate-1/2 member and a few small matrices that
demonstrate when row removal tightens the bounds.  Each fixture carries
the puncture set conventionally used with it (the AR4JA codes puncture
every copy of the highest-degree column).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .poly_ring import PolyResidue
from .qc_matrix import PolyMatrix, WeightMatrix

__all__ = ["Fixture", "fixture_names", "get_fixture"]


AR4JA_12 = (
    (0, 0, 1, 0, 2),
    (1, 1, 0, 1, 3),
    (1, 2, 0, 2, 1),
)

AR4JA_23 = (
    (0, 0, 0, 0, 1, 0, 2),
    (3, 1, 1, 1, 0, 1, 3),
    (1, 3, 1, 2, 0, 2, 1),
)

AR4JA_45 = (
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2),
    (3, 1, 3, 1, 3, 1, 1, 1, 0, 1, 3),
    (1, 3, 1, 3, 1, 3, 1, 2, 0, 2, 1),
)

# Factor-4 QC lift of the rate-1/2 protomatrix, as used by the standard
# before its second expansion step.  Type 1: only zeros and ones.
AR4JA_12_EXPANDED = (
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1),
    (1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1),
    (0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1),
    (0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1),
    (0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0),
    (1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0),
    (0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0),
    (0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1),
)

PROTO_DEMO = (
    (2, 1, 0),
    (0, 1, 1),
)

ROWREMOVAL_GAP = (
    (0, 0, 0, 2),
    (0, 0, 0, 2),
    (1, 2, 2, 1),
)

ROWREMOVAL_VARIANT = (
    (0, 0, 3, 0, 3),
    (1, 1, 0, 1, 3),
    (1, 2, 0, 2, 1),
)


def _proto_demo_lifted() -> PolyMatrix:
    n = 3
    one = PolyResidue.one(n)
    zero = PolyResidue.zero(n)
    return PolyMatrix(
        n,
        (
            (PolyResidue.from_exponents([0, 1], n), one, zero),
            (zero, PolyResidue.monomial(2, n), one),
        ),
    )


def _rowremoval_poly_demo() -> PolyMatrix:
    # Rows 1 and 2 agree on the first two columns, so column pairs from
    # them admit double row removal; monomial tails keep rows distinct.
    n = 7
    z = PolyResidue.zero(n)
    m = PolyResidue.monomial
    return PolyMatrix(
        n,
        (
            (z, z, z, m(5, n)),
            (m(1, n), m(2, n), m(3, n), m(3, n)),
            (m(1, n), m(2, n), m(4, n), m(6, n)),
        ),
    )


@dataclass(frozen=True)
class Fixture:
    """A named built-in matrix with its conventional puncture set."""

    name: str
    kind: str  # "weight" or "poly"
    description: str
    puncture: tuple[int, ...]
    _build: object

    def matrix(self) -> WeightMatrix | PolyMatrix:
        return self._build()


_REGISTRY: dict[str, Fixture] = {}


def _register(name: str, kind: str, description: str, puncture, build) -> None:
    _REGISTRY[name] = Fixture(name, kind, description, tuple(puncture), build)


_register(
    "ar4ja-1/2",
    "weight",
    "rate-1/2 AR4JA protomatrix (3x5); the degree-6 column is punctured",
    (4,),
    lambda: WeightMatrix(AR4JA_12),
)
_register(
    "ar4ja-2/3",
    "weight",
    "rate-2/3 AR4JA protomatrix (3x7); the degree-6 column is punctured",
    (6,),
    lambda: WeightMatrix(AR4JA_23),
)
_register(
    "ar4ja-4/5",
    "weight",
    "rate-4/5 AR4JA protomatrix (3x11); the degree-6 column is punctured",
    (10,),
    lambda: WeightMatrix(AR4JA_45),
)
_register(
    "ar4ja-1/2-expanded",
    "weight",
    "rate-1/2 AR4JA protomatrix after its factor-4 QC lift (12x20, type 1);"
    " the four copies of the punctured column are punctured",
    (16, 17, 18, 19),
    lambda: WeightMatrix(AR4JA_12_EXPANDED),
)
_register(
    "proto-demo",
    "weight",
    "small demo protograph (2x3) with one parallel edge pair",
    (),
    lambda: WeightMatrix(PROTO_DEMO),
)
_register(
    "proto-demo-lifted",
    "poly",
    "a factor-3 QC lift of proto-demo",
    (),
    _proto_demo_lifted,
)
_register(
    "rowremoval-gap",
    "weight",
    "weight matrix (3x4) whose plain bound is unbounded while row removal"
    " certifies 3",
    (),
    lambda: WeightMatrix(ROWREMOVAL_GAP),
)
_register(
    "rowremoval-variant",
    "weight",
    "variant of the rate-1/2 protomatrix (3x5) where row removal tightens"
    " the bound from 30 to 10",
    (),
    lambda: WeightMatrix(ROWREMOVAL_VARIANT),
)
_register(
    "rowremoval-poly-demo",
    "poly",
    "polynomial matrix (3x4 over x^7 - 1) with a zero-row pattern that"
    " admits single and double row removal",
    (),
    _rowremoval_poly_demo,
)


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def get_fixture(name: str) -> Fixture:
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(fixture_names())
        raise DomainError(f"unknown fixture {name!r}; known: {known}") from None
