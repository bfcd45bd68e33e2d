import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import shift_matrix, span_rank
from sldic.errors import DimensionError, InvalidShiftError
from sldic.gf2 import (BitMatrix, BitVector, colspace_contains, downshift, hstack, level_to_entry,
                       matmul, matvec, rank, solve, vstack)


def matrices(max_rows=8, max_cols=8):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(BitMatrix.from_rows)))


def vec(bits):
    return BitVector.from_bits(bits)


class TestDownshift:
    def test_zero_shift_is_identity(self):
        assert downshift(3, 0) == BitMatrix.identity(3)

    def test_single_shift_moves_top_entry_down(self):
        assert downshift(2, 1) @ vec([1, 0]) == vec([0, 1])

    @pytest.mark.parametrize("bits", [[0, 0], [1, 0], [0, 1], [1, 1]])
    def test_full_shift_annihilates(self, bits):
        assert downshift(2, 2) @ vec(bits) == vec([0, 0])

    @pytest.mark.parametrize("q,s", [(3, 4), (3, -1), (0, 1)])
    def test_rejects_out_of_range_shift(self, q, s):
        with pytest.raises(InvalidShiftError):
            downshift(q, s)

    @pytest.mark.parametrize("q", range(0, 7))
    def test_matches_dense_powers(self, q):
        for s in range(q + 1):
            assert downshift(q, s).toarray().tolist() == shift_matrix(q, s).tolist()

    @given(st.integers(0, 10).flatmap(lambda q: st.tuples(
        st.just(q), st.integers(0, q)).flatmap(lambda t: st.tuples(
            st.just(t[0]), st.just(t[1]), st.integers(0, t[0] - t[1])))))
    def test_powers_compose(self, qst):
        q, s, t = qst
        assert downshift(q, s) @ downshift(q, t) == downshift(q, s + t)

    def test_levels_count_from_the_bottom(self):
        v = downshift(4, 1) @ BitVector(4, 0b0001)  # entry 1 (level 4) set
        assert v.level(3) == 1 and v.entry(2) == 1
        assert level_to_entry(4, 1) == 4


class TestRank:
    def test_identity(self):
        assert rank(BitMatrix.identity(4)) == 4

    def test_zero(self):
        assert rank(BitMatrix.zeros(3, 5)) == 0

    def test_downshift_by_one(self):
        # oracle: span enumeration of the dense power
        assert span_rank(shift_matrix(4, 1)) == 3
        assert rank(downshift(4, 1)) == 3

    @settings(max_examples=200)
    @given(matrices(max_rows=8, max_cols=10))
    def test_matches_span_oracle(self, M):
        assert rank(M) == span_rank(M.toarray())

    @given(matrices())
    def test_bounded_by_shape(self, M):
        assert rank(M) <= min(M.shape)


class TestColspace:
    def test_identity_contains_everything(self, rng):
        A = BitMatrix.from_array(rng.integers(0, 2, (4, 6)))
        assert colspace_contains(BitMatrix.identity(4), A)

    def test_zero_contains_nothing_nonzero(self):
        assert not colspace_contains(BitMatrix.zeros(2, 3), BitMatrix.from_rows([[1], [0]]))

    def test_identical_column(self):
        col = BitMatrix.from_rows([[1], [1]])
        assert colspace_contains(col, col)

    def test_row_mismatch(self):
        with pytest.raises(DimensionError):
            colspace_contains(BitMatrix.zeros(2, 1), BitMatrix.zeros(3, 1))

    @given(st.integers(1, 6).flatmap(lambda r: st.tuples(
        st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3), min_size=r, max_size=r),
        st.lists(st.lists(st.integers(0, 1), min_size=2, max_size=2), min_size=r, max_size=r))))
    def test_rank_monotone_with_equality_iff_contained(self, pair):
        B, A = BitMatrix.from_rows(pair[0]), BitMatrix.from_rows(pair[1])
        joint = rank(hstack(B, A))
        assert joint >= rank(B)
        assert (joint == rank(B)) == colspace_contains(B, A)


class TestMatvec:
    def test_identity(self):
        v = vec([1, 0, 1])
        assert matvec(BitMatrix.identity(3), v) == v

    def test_zero(self):
        assert matvec(BitMatrix.zeros(2, 3), vec([1, 1, 1])) == vec([0, 0])

    def test_downshift(self):
        assert matvec(downshift(2, 1), vec([1, 1])) == vec([0, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            matvec(BitMatrix.identity(3), vec([1, 0]))

    @given(matrices(), st.data())
    def test_linear(self, M, data):
        u, v = (BitVector(M.ncols, data.draw(st.integers(0, 2 ** M.ncols - 1))) for _ in "uv")
        assert matvec(M, u ^ v) == matvec(M, u) ^ matvec(M, v)

    @given(matrices(), st.data())
    def test_agrees_with_dense_product(self, M, data):
        x = data.draw(st.lists(st.integers(0, 1), min_size=M.ncols, max_size=M.ncols))
        dense = (M.toarray().astype(int) @ np.array(x)) % 2
        assert matvec(M, vec(x)).tolist() == dense.tolist()


class TestStructure:
    def test_matmul_matches_dense(self, rng):
        A = rng.integers(0, 2, (4, 5))
        B = rng.integers(0, 2, (5, 3))
        got = matmul(BitMatrix.from_array(A), BitMatrix.from_array(B)).toarray()
        assert got.tolist() == ((A @ B) % 2).tolist()

    def test_stacking(self):
        A = BitMatrix.from_rows([[1, 0], [0, 1]])
        B = BitMatrix.from_rows([[1], [1]])
        assert hstack(A, B).tolist() == [[1, 0, 1], [0, 1, 1]]
        assert vstack(A, A).nrows == 4

    def test_row_strings_round_trip(self, rng):
        M = BitMatrix.from_array(rng.integers(0, 2, (3, 7)))
        assert BitMatrix.from_row_strings(M.row_strings(), 7) == M

    def test_select_columns(self):
        M = BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
        assert M.select_columns([2, 0]).tolist() == [[1, 1], [1, 0]]

    def test_vector_rejects_non_bits(self):
        with pytest.raises(ValueError):
            BitVector.from_bits([0, 2])

    def test_xor_with_self_is_zero(self):
        v = vec([1, 0, 1, 1])
        assert v ^ v == BitVector.zeros(4)


class TestSolve:
    @given(matrices(), st.data())
    def test_solution_reproduces_rhs(self, M, data):
        x = BitVector(M.ncols, data.draw(st.integers(0, 2 ** M.ncols - 1)))
        y = matvec(M, x)
        sol = solve(M, y)
        assert sol is not None and matvec(M, sol) == y

    def test_inconsistent(self):
        M = BitMatrix.from_rows([[1], [1]])
        assert solve(M, vec([1, 0])) is None
