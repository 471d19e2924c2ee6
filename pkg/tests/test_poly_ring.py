import random

import numpy as np
import pytest

from qcdist.errors import DomainError, ModulusMismatchError, ParseError, ShapeError
from qcdist.poly_ring import (
    PolyResidue,
    RingClass,
    annihilator,
    circulant_from_poly,
    format_exponents,
    parse_exponents,
    poly_from_circulant,
)

from util import random_residue


def residue(text: str, n: int) -> PolyResidue:
    return PolyResidue.parse(text, n)


class TestAdd:
    def test_self_cancellation(self):
        assert residue("0,1", 3) + residue("1", 3) == residue("0", 3)

    def test_char_two(self):
        rng = random.Random(11)
        for _ in range(50):
            a = random_residue(rng, rng.randint(1, 16))
            assert (a + a).is_zero

    def test_disjoint_supports(self):
        assert residue("0,1,3", 7) + residue("6", 7) == residue("0,1,3,6", 7)

    def test_modulus_mismatch(self):
        with pytest.raises(ModulusMismatchError):
            residue("0", 3) + residue("0", 4)


class TestMul:
    def test_exponents_wrap(self):
        assert residue("1", 3) * residue("2", 3) == residue("0", 3)

    def test_allones_kills_even_weight(self):
        allones = PolyResidue.from_exponents(range(7), 7)
        assert (allones * residue("3,6", 7)).is_zero
        assert (allones * residue("0,1,2,5", 7)).is_zero

    def test_annihilator_exists_for_known_zero_divisor(self):
        # brute force over all nonzero elements of the ring mod x^7 - 1
        a = residue("0,1,3", 7)
        annihilators = [
            b for b in range(1, 1 << 7) if (a * PolyResidue(7, b)).is_zero
        ]
        assert annihilators

    def test_modulus_mismatch(self):
        with pytest.raises(ModulusMismatchError):
            residue("0", 5) * residue("0", 6)


class TestWeight:
    def test_zero(self):
        assert PolyResidue.zero(9).weight == 0

    def test_two_terms(self):
        assert residue("0,2", 3).weight == 2

    def test_three_terms(self):
        assert residue("0,1,3", 7).weight == 3


class TestClassify:
    def test_known_zero_divisor(self):
        assert residue("0,1,3", 7).classify() is RingClass.ZERO_DIVISOR

    def test_monomial_is_unit(self):
        assert residue("2", 5).classify() is RingClass.UNIT

    def test_even_weight_is_zero_divisor(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(2, 12)
            exps = rng.sample(range(n), 2 * rng.randint(1, n // 2) if n >= 2 else 0)
            a = PolyResidue.from_exponents(exps[: 2 * (len(exps) // 2)], n)
            if a.is_zero:
                continue
            assert a.classify() is RingClass.ZERO_DIVISOR

    def test_zero(self):
        assert PolyResidue.zero(4).classify() is RingClass.ZERO

    @pytest.mark.parametrize("n", range(2, 9))
    def test_matches_brute_force(self, n):
        # unit iff some b with ab = 1; zero divisor iff some nonzero b with ab = 0
        for bits in range(1, 1 << n):
            a = PolyResidue(n, bits)
            products = {(a * PolyResidue(n, b)).bits for b in range(1, 1 << n)}
            if a.classify() is RingClass.UNIT:
                assert 1 in products and 0 not in products
            else:
                assert 0 in products and 1 not in products


class TestMonomialInverse:
    @pytest.mark.parametrize(
        "n,mono,inv", [(5, "2", "3"), (5, "0", "0"), (5, "4", "1")]
    )
    def test_values(self, n, mono, inv):
        assert residue(mono, n).monomial_inverse() == residue(inv, n)

    def test_product_is_one(self):
        rng = random.Random(3)
        for _ in range(30):
            n = rng.randint(1, 20)
            a = PolyResidue.monomial(rng.randrange(n), n)
            assert (a * a.monomial_inverse()) == PolyResidue.one(n)

    def test_rejects_non_monomial(self):
        with pytest.raises(DomainError):
            residue("0,1", 5).monomial_inverse()
        with pytest.raises(DomainError):
            PolyResidue.zero(5).monomial_inverse()


class TestCirculant:
    def test_identity(self):
        assert np.array_equal(circulant_from_poly(PolyResidue.one(3)), np.eye(3, dtype=np.uint8))

    def test_single_shift(self):
        expected = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=np.uint8)
        assert np.array_equal(circulant_from_poly(residue("1", 3)), expected)

    def test_two_terms(self):
        expected = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
        assert np.array_equal(circulant_from_poly(residue("0,2", 3)), expected)

    def test_round_trip(self):
        rng = random.Random(7)
        for _ in range(40):
            a = random_residue(rng, rng.randint(1, 12))
            assert poly_from_circulant(circulant_from_poly(a)) == a

    def test_ring_homomorphism(self):
        rng = random.Random(13)
        for _ in range(25):
            n = rng.randint(1, 8)
            a = random_residue(rng, n)
            b = random_residue(rng, n)
            lhs = circulant_from_poly(a * b)
            rhs = (circulant_from_poly(a).astype(int) @ circulant_from_poly(b).astype(int)) % 2
            assert np.array_equal(lhs, rhs.astype(np.uint8))

    def test_weight_equals_first_column_weight(self):
        rng = random.Random(17)
        for _ in range(20):
            a = random_residue(rng, rng.randint(1, 10))
            assert a.weight == int(circulant_from_poly(a)[:, 0].sum())

    def test_rejects_non_circulant(self):
        bad = np.array([[1, 0], [1, 1]], dtype=np.uint8)
        with pytest.raises(ShapeError):
            poly_from_circulant(bad)


class TestAlgebraProperties:
    def test_commutative_associative_distributive(self):
        rng = random.Random(29)
        for _ in range(60):
            n = rng.randint(1, 14)
            a, b, c = (random_residue(rng, n) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


class TestTextForm:
    def test_round_trip(self):
        rng = random.Random(31)
        for _ in range(40):
            n = rng.randint(1, 20)
            a = random_residue(rng, n)
            assert PolyResidue.parse(str(a), n) == a

    def test_zero_form(self):
        assert str(PolyResidue.zero(6)) == "-"
        assert PolyResidue.parse("-", 6).is_zero

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_exponents("", 4)
        with pytest.raises(ParseError):
            parse_exponents("0,0", 4)
        with pytest.raises(ParseError):
            parse_exponents("4", 4)
        with pytest.raises(ParseError):
            parse_exponents("a", 4)

    def test_format(self):
        assert format_exponents(0b101) == "0,2"


class TestAnnihilator:
    def test_row_with_even_weight_entry(self):
        row = [PolyResidue.zero(7), residue("0,1", 7)]
        r = annihilator(row, 7)
        assert r == PolyResidue.from_exponents(range(7), 7)
        for e in row:
            assert (r * e).is_zero

    def test_unit_entry_blocks(self):
        assert annihilator([residue("0", 5), residue("0,1", 5)], 5) is None

    def test_all_zero_row(self):
        assert annihilator([PolyResidue.zero(4)], 4) == PolyResidue.one(4)

    def test_annihilates_random_rows(self):
        rng = random.Random(37)
        found = 0
        for _ in range(60):
            n = rng.randint(2, 10)
            row = [random_residue(rng, n) for _ in range(rng.randint(1, 3))]
            r = annihilator(row, n)
            if r is None:
                continue
            found += 1
            assert not r.is_zero
            for e in row:
                assert (r * e).is_zero
        assert found > 5
