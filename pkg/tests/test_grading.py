import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplets.grading import (
    DimensionError,
    F2Matrix,
    GradeVec,
    Grading,
    add,
    gram_factor,
    inconsistency_certificate,
    parity,
    rank,
    rref,
    solve_affine,
)


def gv(*bits):
    return GradeVec.from_bits(bits)


def all_vecs(n):
    return [GradeVec(b, n) for b in range(1 << n)]


def det_f2(grid):
    """Cofactor expansion along the first row, mod 2."""
    n = len(grid)
    if n == 1:
        return grid[0][0] & 1
    total = 0
    for c in range(n):
        if grid[0][c]:
            minor = [row[:c] + row[c + 1:] for row in grid[1:]]
            total ^= det_f2(minor)
    return total


class TestGradeVec:
    def test_sum_of_i_and_j_grades_is_k_grade(self):
        assert add(gv(0, 1, 1), gv(1, 0, 1)) == gv(1, 1, 0)

    def test_zero_is_identity(self):
        for v in all_vecs(3):
            assert add(v, GradeVec.zero(3)) == v

    def test_order_two(self):
        for v in all_vecs(4):
            assert v + v == GradeVec.zero(4)

    def test_width_mismatch(self):
        with pytest.raises(DimensionError):
            add(gv(0, 1), gv(0, 1, 1))
        with pytest.raises(DimensionError):
            parity(gv(1), gv(1, 0))

    def test_text_form(self):
        assert str(gv(0, 1, 1)) == "(0,1,1)"
        assert gv(0, 1, 1).to_tuple() == (0, 1, 1)

    def test_rejects_bad_components(self):
        with pytest.raises(ValueError):
            GradeVec.from_bits((0, 2))
        with pytest.raises(DimensionError):
            GradeVec(0, 0)
        with pytest.raises(DimensionError):
            GradeVec(0, 65)


class TestParity:
    def test_i_and_j_pair_to_one(self):
        assert parity(gv(0, 1, 1), gv(1, 0, 1)) == 1

    def test_i_with_itself_is_even(self):
        # the integer scalar product is 2
        assert parity(gv(0, 1, 1), gv(0, 1, 1)) == 0

    def test_zero_pairs_trivially(self):
        for v in all_vecs(3):
            assert parity(GradeVec.zero(3), v) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_symmetric_exhaustive(self, n):
        for a, b in product(all_vecs(n), repeat=2):
            assert parity(a, b) == parity(b, a)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_bilinear_exhaustive(self, n):
        for a, b, c in product(all_vecs(n), repeat=3):
            assert parity(a + b, c) == parity(a, c) ^ parity(b, c)

    def test_matches_integer_dot_product(self):
        for a, b in product(all_vecs(4), repeat=2):
            assert parity(a, b) == sum(x * y for x, y in zip(a, b)) % 2


class TestGrading:
    def test_unit_must_be_zero(self):
        with pytest.raises(ValueError):
            Grading.from_lists([(1, 0), (0, 0)])

    def test_json_round_trip(self):
        g = Grading.from_lists([(0, 0, 0), (0, 1, 1)])
        assert Grading.from_json(g.to_json()) == g


class TestRref:
    def test_identity(self):
        m = F2Matrix.identity(3)
        r, rk, piv = rref(m)
        assert r == m and rk == 3 and piv == [0, 1, 2]

    def test_duplicate_rows(self):
        r, rk, piv = rref(F2Matrix.from_lists([[1, 1], [1, 1]]))
        assert r.to_lists() == [[1, 1], [0, 0]]
        assert rk == 1 and piv == [0]

    def test_random_invertible_has_full_rank(self):
        rng = random.Random(8)
        found = 0
        while found < 5:
            grid = [[rng.getrandbits(1) for _ in range(8)] for _ in range(8)]
            if det_f2(grid) == 1:
                assert rank(F2Matrix.from_lists(grid)) == 8
                found += 1

    def test_rank_full_iff_determinant_one(self):
        rng = random.Random(3)
        for _ in range(40):
            grid = [[rng.getrandbits(1) for _ in range(6)] for _ in range(6)]
            assert (rank(F2Matrix.from_lists(grid)) == 6) == (det_f2(grid) == 1)

    @settings(max_examples=200)
    @given(st.integers(1, 7), st.integers(1, 7), st.data())
    def test_idempotent_and_bounded(self, rows, cols, data):
        m = F2Matrix(tuple(data.draw(st.integers(0, (1 << cols) - 1)) for _ in range(rows)), cols)
        r, rk, _ = rref(m)
        assert rref(r)[0] == r
        assert rk <= min(rows, cols)
        # same row space: every original row reduces to zero against r
        assert rank(F2Matrix(r.rows + m.rows, cols)) == rk


class TestSolveAffine:
    def test_identity(self):
        for b in product((0, 1), repeat=3):
            assert solve_affine(F2Matrix.identity(3), b) == b

    def test_free_variable_set_to_zero(self):
        assert solve_affine(F2Matrix.from_lists([[1, 1]]), (1,)) == (1, 0)

    def test_contradictory_rows(self):
        m = F2Matrix.from_lists([[1], [1]])
        assert solve_affine(m, (1, 0)) is None
        assert inconsistency_certificate(m, (1, 0)) == [0, 1]

    def test_rhs_length_checked(self):
        with pytest.raises(DimensionError):
            solve_affine(F2Matrix.identity(2), (1,))

    @settings(max_examples=300)
    @given(st.integers(1, 8), st.integers(1, 8), st.data())
    def test_solution_substitutes_or_certificate_exists(self, rows, cols, data):
        m = F2Matrix(tuple(data.draw(st.integers(0, (1 << cols) - 1)) for _ in range(rows)), cols)
        rhs = tuple(data.draw(st.integers(0, 1)) for _ in range(rows))
        x = solve_affine(m, rhs)
        if x is None:
            combo = inconsistency_certificate(m, rhs)
            assert combo
            acc = 0
            for k in combo:
                acc ^= m.rows[k]
            assert acc == 0 and sum(rhs[k] for k in combo) % 2 == 1
        else:
            assert m.mul_vec(x) == rhs
            assert inconsistency_certificate(m, rhs) is None


@settings(max_examples=200)
@given(st.integers(1, 6), st.data())
def test_gram_factor_reproduces_symmetric_matrix(n, data):
    sym = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            sym[a][b] = sym[b][a] = data.draw(st.integers(0, 1))
    rows = gram_factor(sym)
    for a, b in product(range(n), repeat=2):
        assert sum(x * y for x, y in zip(rows[a], rows[b])) % 2 == sym[a][b]
