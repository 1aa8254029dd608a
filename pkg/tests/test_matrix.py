import pytest
from hypothesis import given, settings, strategies as st

from splinemod.matrix import (
    IntMatrix,
    column_lattices_equal,
    det,
    hnf,
    kernel_basis,
    snf,
)


def small_matrices(max_dim=4, max_entry=30):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    ).map(IntMatrix)


def diag_of(M: IntMatrix):
    return tuple(
        M.entries[i][i] if i < M.ncols else 0 for i in range(min(M.nrows, M.ncols))
    )


def is_lower_echelon(H: IntMatrix) -> bool:
    """Pivot rows strictly increase with the column index; zero cols trail."""
    last = -1
    seen_zero = False
    for j in range(H.ncols):
        col = H.column(j)
        nz = [i for i, x in enumerate(col) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        if nz[0] <= last:
            return False
        last = nz[0]
    return True


class TestIntMatrix:
    def test_immutability(self):
        A = IntMatrix([[1, 2], [3, 4]])
        with pytest.raises(AttributeError):
            A.entries = ()

    def test_matmul_identity(self):
        A = IntMatrix([[1, 2], [3, 4]])
        assert A @ IntMatrix.identity(2) == A

    def test_from_columns_roundtrip(self):
        A = IntMatrix([[1, 2], [3, 4], [5, 6]])
        assert IntMatrix.from_columns(A.columns()) == A

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix([[1, 2], [3]])


class TestHnf:
    def test_identity(self):
        H, U = hnf(IntMatrix.identity(2))
        assert H == IntMatrix.identity(2)
        assert U == IntMatrix.identity(2)

    def test_2x2_determinant_preserved(self):
        # columns (2,4) and (3,5): |det| = 2 survives into the triangular form
        A = IntMatrix.from_columns([(2, 4), (3, 5)])
        H, U = hnf(A)
        assert A @ U == H
        assert abs(det(H)) == abs(det(A)) == 2
        assert is_lower_echelon(H)
        assert abs(det(U)) == 1

    def test_two_vertex_lattice(self):
        # generators (1,1) and (2,0) of {f : 2 | f1 - f2}
        A = IntMatrix.from_columns([(1, 1), (2, 0)])
        H, _ = hnf(A)
        assert H.columns() == [(1, 1), (0, 2)]

    def test_pivot_reduction(self):
        H, U = hnf(IntMatrix([[4, 7], [0, 3]]))
        # pivot row 0 first: entries left of later pivots reduced into [0, pivot)
        assert is_lower_echelon(H)
        for i in range(2):
            p = H.entries[i][i]
            assert p > 0
            for j in range(i):
                assert 0 <= H.entries[i][j] < p

    @settings(max_examples=150)
    @given(small_matrices())
    def test_factorization_and_shape(self, A):
        H, U = hnf(A)
        assert A @ U == H
        assert abs(det(U)) == 1
        assert is_lower_echelon(H)

    @settings(max_examples=100)
    @given(small_matrices())
    def test_column_span_preserved(self, A):
        H, _ = hnf(A)
        assert column_lattices_equal(A, H)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            hnf(IntMatrix([]))


class TestSnf:
    def test_diag_6_4(self):
        # d1 = gcd of the entries, d1*d2 = |det| = 24
        res = snf(IntMatrix([[6, 0], [0, 4]]))
        assert res.d == (2, 12)

    def test_zero_matrix(self):
        res = snf(IntMatrix([[0, 0], [0, 0]]))
        assert res.d == (0, 0)

    def test_already_smith(self):
        res = snf(IntMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 36]]))
        assert res.d == (1, 1, 36)

    def test_rectangular(self):
        res = snf(IntMatrix([[2, 4, 6]]))
        assert res.d == (2,)
        assert res.U @ IntMatrix([[2, 4, 6]]) @ res.V == IntMatrix([[2, 0, 0]])

    @settings(max_examples=150)
    @given(small_matrices())
    def test_invariants(self, A):
        res = snf(A)
        S = res.U @ A @ res.V
        for i in range(A.nrows):
            for j in range(A.ncols):
                expect = res.d[i] if i == j and i < len(res.d) else 0
                assert S.entries[i][j] == expect
        assert abs(det(res.U)) == 1
        assert abs(det(res.V)) == 1
        nonzero = [x for x in res.d if x]
        assert all(x > 0 for x in nonzero)
        assert res.d[: len(nonzero)] == tuple(nonzero)  # zeros trail
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0

    @settings(max_examples=50)
    @given(small_matrices())
    def test_deterministic(self, A):
        assert snf(A) == snf(A)


class TestKernel:
    def test_simple(self):
        A = IntMatrix([[1, -1, -2]])
        basis = kernel_basis(A)
        assert len(basis) == 2
        for k in basis:
            assert sum(a * x for a, x in zip((1, -1, -2), k)) == 0

    @settings(max_examples=100)
    @given(small_matrices())
    def test_kernel_vectors_annihilate(self, A):
        for k in kernel_basis(A):
            prod = A @ IntMatrix.from_columns([k])
            assert all(all(x == 0 for x in row) for row in prod.entries)

    def test_kernel_complete(self):
        # rank 1 map on Z^3: kernel must have rank 2 and contain (1,1,0)-style vectors
        A = IntMatrix([[2, -2, 0], [1, -1, 0]])
        basis = kernel_basis(A)
        assert len(basis) == 2
        lattice = IntMatrix.from_columns(basis)
        assert column_lattices_equal(
            lattice, IntMatrix.from_columns([(1, 1, 0), (0, 0, 1)])
        )


class TestDet:
    def test_golden(self):
        assert det(IntMatrix([[2, 3], [4, 5]])) == -2
        assert det(IntMatrix.identity(3)) == 1
        assert det(IntMatrix([[2, 0], [0, 0]])) == 0

    @settings(max_examples=100)
    @given(small_matrices(max_dim=3, max_entry=10))
    def test_multiplicative(self, A):
        if A.nrows != A.ncols:
            return
        B = IntMatrix.identity(A.nrows)
        assert det(A @ B) == det(A)
