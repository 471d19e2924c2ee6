import random

import numpy as np
import pytest

from qcdist._fastperm import HAVE_NUMBA, perm_int_i64, perm_int_i64_batch
from qcdist.errors import ShapeError
from qcdist.poly_ring import PolyResidue, RingClass
from qcdist.qc_matrix import (
    PolyMatrix,
    WeightMatrix,
    dependent_row_witness,
    drop,
    index_set,
    int_permanent_bound,
    is_invertible,
    perm_int,
    perm_ring,
    weight_matrix,
)

from util import perm_int_brute, perm_ring_brute, random_poly_matrix, random_weight_matrix

AR4JA_12 = WeightMatrix.from_rows(
    [[0, 0, 1, 0, 2], [1, 1, 0, 1, 3], [1, 2, 0, 2, 1]]
)


class TestWeightMatrixOps:
    def test_weight_image_of_zero_matrix(self):
        h = PolyMatrix.from_bit_rows([[0, 0], [0, 0]], 5)
        assert weight_matrix(h).entries == ((0, 0), (0, 0))

    def test_weight_image_single_entry(self):
        h = PolyMatrix.from_bit_rows([[0b101]], 3)
        assert weight_matrix(h).entries == ((2,),)

    def test_lift_weight_image_matches_protomatrix(self):
        rng = random.Random(2)
        n = 6
        rows = []
        for j in range(3):
            row = []
            for i in range(5):
                w = AR4JA_12[j, i]
                row.append(PolyResidue.from_exponents(rng.sample(range(n), w), n))
            rows.append(tuple(row))
        h = PolyMatrix(n, tuple(rows))
        assert weight_matrix(h).entries == AR4JA_12.entries

    def test_select_columns_full(self):
        assert AR4JA_12.select_columns(range(5)).entries == AR4JA_12.entries

    def test_select_columns_subset(self):
        sub = AR4JA_12.select_columns((0, 1, 3))
        assert sub.entries == ((0, 0, 0), (1, 1, 1), (1, 2, 2))

    def test_select_rows(self):
        assert AR4JA_12.select_rows((2,)).entries == ((1, 2, 0, 2, 1),)

    def test_drop(self):
        assert drop((0, 1, 3), 1) == (0, 3)
        with pytest.raises(ShapeError):
            drop((0, 1), 5)

    def test_index_set_bounds(self):
        with pytest.raises(ShapeError):
            index_set((0, 9), 5)
        with pytest.raises(ShapeError):
            index_set((1, 1), 5)

    def test_rejects_negative_entries(self):
        with pytest.raises(ShapeError):
            WeightMatrix.from_rows([[1, -1]])

    def test_rejects_ragged(self):
        with pytest.raises(ShapeError):
            WeightMatrix(((1, 2), (3,)))


class TestPermInt:
    def test_two_by_two(self):
        assert perm_int([[1, 2], [3, 4]]) == 10

    def test_zero_row(self):
        assert perm_int([[0, 0, 0], [1, 2, 3], [4, 5, 6]]) == 0

    def test_all_ones_is_factorial(self):
        assert perm_int([[1] * 12] * 12) == 479001600

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            perm_int([[1, 2, 3], [4, 5, 6]])

    def test_against_permutation_sum(self):
        rng = random.Random(23)
        for _ in range(60):
            j = rng.randint(1, 5)
            rows = [[rng.randint(0, 4) for _ in range(j)] for _ in range(j)]
            assert perm_int(rows) == perm_int_brute(rows)

    def test_row_and_column_transposition_invariance(self):
        rng = random.Random(29)
        for _ in range(20):
            j = 4
            rows = [[rng.randint(0, 3) for _ in range(j)] for _ in range(j)]
            base = perm_int(rows)
            perm_rows = rows[::-1]
            perm_cols = [list(r[::-1]) for r in rows]
            assert perm_int(perm_rows) == base
            assert perm_int(perm_cols) == base

    def test_cofactor_expansion_row_choice_free(self):
        # expanding along any fixed row or column gives the same value
        rng = random.Random(31)
        for _ in range(10):
            j = 5
            rows = [[rng.randint(0, 2) for _ in range(j)] for _ in range(j)]

            def expand_along_row(mat, r):
                if len(mat) == 0:
                    return 1
                total = 0
                rest = [row for k, row in enumerate(mat) if k != r]
                for c, v in enumerate(mat[r]):
                    if v:
                        minor = [row[:c] + row[c + 1 :] for row in rest]
                        total += v * expand_along_row(minor, 0)
                return total

            values = {expand_along_row(rows, r) for r in range(j)}
            cols_mat = [list(col) for col in zip(*rows)]
            values |= {expand_along_row(cols_mat, c) for c in range(j)}
            assert values == {perm_int(rows)}

    def test_large_values_exact(self):
        # 10x10 all-sevens: 10! * 7^10 does not fit in 32 bits
        rows = [[7] * 10] * 10
        assert perm_int(rows) == 3628800 * 7**10


class TestPermRing:
    def test_two_by_two_monomials(self):
        n = 11
        h = PolyMatrix.from_bit_rows(
            [[1 << 2, 1 << 5], [1 << 3, 1 << 4]], n
        )
        assert perm_ring(h) == PolyResidue.from_exponents([6, 8], n)

    def test_cancellation(self):
        h = PolyMatrix.from_bit_rows([[2, 2], [2, 2]], 3)
        assert perm_ring(h).is_zero

    def test_against_permutation_sum(self):
        rng = random.Random(41)
        for _ in range(40):
            j = rng.randint(1, 4)
            h = random_poly_matrix(rng, j, j, 5, max_weight=3)
            assert perm_ring(h) == perm_ring_brute(h)

    def test_bigger_matrices_against_sum(self):
        rng = random.Random(43)
        for _ in range(5):
            h = random_poly_matrix(rng, 6, 6, 7, max_weight=2)
            assert perm_ring(h) == perm_ring_brute(h)

    def test_weight_bounded_by_integer_permanent(self):
        rng = random.Random(47)
        for _ in range(200):
            j = rng.randint(1, 4)
            h = random_poly_matrix(rng, j, j, rng.randint(2, 9), max_weight=3)
            assert perm_ring(h).weight <= perm_int(h.weight_matrix())

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            perm_ring(PolyMatrix.from_bit_rows([[1, 2, 3], [1, 1, 1]], 3))


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
class TestFastPath:
    def test_single_matches_pure(self):
        rng = random.Random(53)
        for _ in range(40):
            j = rng.randint(1, 7)
            rows = [[rng.randint(0, 3) for _ in range(j)] for _ in range(j)]
            assert perm_int_i64(np.array(rows, dtype=np.int64)) == perm_int(rows)

    def test_batch_matches_pure(self):
        rng = random.Random(59)
        mat = np.array(
            [[rng.randint(0, 2) for _ in range(9)] for _ in range(4)], dtype=np.int64
        )
        import itertools

        subsets = np.array(list(itertools.combinations(range(9), 4)), dtype=np.int32)
        values = perm_int_i64_batch(mat, subsets)
        for cols, v in zip(subsets, values):
            assert int(v) == perm_int([[int(mat[r, c]) for c in cols] for r in range(4)])

    def test_bound_gates_the_fast_path(self):
        rows = [[3, 6], [2, 5]]
        assert int_permanent_bound(rows) == 9 * 7
        assert perm_int(rows) <= int_permanent_bound(rows)


class TestRingMatrixDiagnostics:
    def test_non_invertible_with_dependent_row_witness(self):
        for n in (4, 5, 7):
            m = PolyMatrix.from_bit_rows([[1, 1], [0, 0b11]], n)
            assert not is_invertible(m)
            witness = dependent_row_witness(m)
            assert witness is not None
            row_idx, r = witness
            assert row_idx == 1
            assert r == PolyResidue.from_exponents(range(n), n)
            for e in m.row(row_idx):
                assert (r * e).is_zero

    def test_invertible_identity(self):
        m = PolyMatrix.from_bit_rows([[1, 0], [0, 1]], 6)
        assert is_invertible(m)
        assert dependent_row_witness(m) is None

    def test_determinant_classification(self):
        m = PolyMatrix.from_bit_rows([[1, 1], [0, 0b11]], 9)
        assert perm_ring(m).classify() is RingClass.ZERO_DIVISOR
