import pytest

from fsscode.setsystem import (
    BinaryMatrix,
    SetSystemError,
    block_stats,
    co_block,
    from_incidence,
    incidence_matrix,
    validate_fss,
)

# the running example: 10 size-4 blocks on 8 points with near-uniform pair coverage
EXAMPLE_BLOCKS = [
    [1, 2, 4, 5], [1, 2, 3, 7], [1, 3, 5, 8], [2, 3, 5, 6], [2, 3, 4, 8],
    [3, 4, 6, 7], [4, 5, 7, 8], [1, 4, 6, 8], [1, 5, 6, 7], [2, 6, 7, 8],
]


@pytest.fixture
def example():
    return validate_fss(8, EXAMPLE_BLOCKS, t=3)


class TestValidate:
    def test_roundtrip_and_sorting(self):
        fss = validate_fss(4, [[3, 1], [2, 4]])
        assert fss.blocks == ((1, 3), (2, 4))
        assert fss.b == 2

    def test_repeated_blocks_allowed(self):
        fss = validate_fss(2, [[1, 2], [1, 2], [1, 2]])
        assert fss.b == 3

    def test_point_out_of_range(self):
        with pytest.raises(SetSystemError):
            validate_fss(3, [[1, 4]])

    def test_duplicate_point_in_block(self):
        with pytest.raises(SetSystemError):
            validate_fss(3, [[2, 2]])

    def test_empty_block(self):
        with pytest.raises(SetSystemError):
            validate_fss(3, [[1], []])

    def test_t_too_large(self):
        with pytest.raises(SetSystemError):
            validate_fss(3, [[1, 2]], t=3)

    def test_json_roundtrip(self, example):
        from fsscode.setsystem import SetSystem

        again = SetSystem.from_json(example.to_json())
        assert again == example

    def test_incidences_block_major(self):
        fss = validate_fss(3, [[1, 3], [2, 3]])
        assert fss.incidences == [(1, 1), (3, 1), (2, 2), (3, 2)]

    def test_point_blocks(self, example):
        assert example.point_blocks(1) == [1, 2, 3, 8, 9]


class TestStats:
    def test_example_stats(self, example):
        st = block_stats(example)
        assert st.K == (4,) * 10
        assert st.R == (5,) * 8
        # near-uniform pair coverage: 24 pairs twice, 4 pairs three times
        assert st.coverage[1] == frozenset({5})
        assert st.coverage[2] == frozenset({2, 3})
        assert st.coverage_hist[2] == {2: 24, 3: 4}
        assert st.coverage[3] == frozenset({0, 1})

    def test_uncovered_subset_contributes_zero(self):
        st = block_stats(validate_fss(3, [[1, 2]]))
        assert 0 in st.coverage[2]
        assert st.coverage_hist[2][0] == 2  # {1,3} and {2,3}

    def test_co_block(self, example):
        assert co_block(example, [1, 2, 4])
        assert not co_block(example, [1, 2, 8])


class TestBinaryMatrix:
    def test_supports_sorted_and_consistent(self):
        H = BinaryMatrix(2, 3, [(0, 2), (0, 0), (1, 1)])
        assert H.row_support == [[0, 2], [1]]
        assert H.col_support == [[0], [1], [0]]
        assert H.nnz == 3

    def test_duplicate_entry_rejected(self):
        with pytest.raises(ValueError):
            BinaryMatrix(1, 1, [(0, 0), (0, 0)])

    def test_out_of_range_entry(self):
        with pytest.raises(ValueError):
            BinaryMatrix(1, 1, [(0, 1)])

    def test_transpose(self):
        H = BinaryMatrix(2, 3, [(0, 2), (1, 0)])
        assert H.transpose().row_support == [[1], [], [0]]


class TestIncidenceMatrix:
    def test_example_matrix_shape(self, example):
        # all 28 pairs of 8 points are covered twice, so both filters agree
        H1 = incidence_matrix(example, min_replication=1)
        H2 = incidence_matrix(example, min_replication=2)
        assert (H1.rows, H1.cols) == (10, 28)
        assert H1.row_support == H2.row_support

    def test_example_first_row(self, example):
        # block {1,2,4,5} covers pairs 12,14,15,24,25,45 -> lexicographic
        # pair columns 1,3,4,9,10,19 (1-based)
        H = incidence_matrix(example, min_replication=1)
        assert [c + 1 for c in H.row_support[0]] == [1, 3, 4, 9, 10, 19]

    def test_min_replication_2_drops_private_pairs(self):
        fss = validate_fss(4, [[1, 2, 3], [1, 2, 4]], t=3)
        H = incidence_matrix(fss)  # only the pair {1,2} is shared
        assert H.cols == 1
        assert H.col_labels == [(1, 2)]

    def test_min_replication_2_drops_private_points(self):
        fss = validate_fss(4, [[1, 2, 3], [1, 2, 4]])
        H = incidence_matrix(fss)  # t=2: columns are shared points
        assert H.col_labels == [(1,), (2,)]

    def test_t2_identity(self):
        fss = validate_fss(4, [[1, 2], [3, 4], [1, 3]])
        H = incidence_matrix(fss, min_replication=1)
        assert H.cols == 4
        assert from_incidence(H) == fss

    def test_bad_min_replication(self, example):
        with pytest.raises(ValueError):
            incidence_matrix(example, min_replication=3)


class TestFromIncidence:
    def test_empty_row_rejected(self):
        H = BinaryMatrix(2, 2, [(0, 0)])
        with pytest.raises(SetSystemError):
            from_incidence(H)
