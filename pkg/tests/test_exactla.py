from fractions import Fraction

from hypothesis import given, strategies as st

from bvformality.exactla import Echelon, SparseMatrix, rank, reduce, solve

small = st.integers(min_value=-3, max_value=3)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
)


def test_rank_examples():
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(SparseMatrix.from_dense([[1, 0], [0, 1]])) == 2
    assert rank(SparseMatrix.from_dense([[0, 0], [0, 0]])) == 0


def test_solve_consistent_and_inconsistent():
    m = SparseMatrix.from_dense([[1, 2], [2, 4]])
    x = solve(m, [1, 2])
    assert m.matvec(dict(enumerate(x))) == {0: 1, 1: 2}
    assert solve(m, [1, 3]) is None


@given(matrices)
def test_rank_nullity_and_kernel(rows):
    m = SparseMatrix.from_dense(rows)
    red = reduce(m)
    assert red.rank + len(red.kernel_basis) == m.col_count
    for v in red.kernel_basis:
        assert m.matvec(v) == {}
    assert rank(m) == rank(m.transpose())


@given(matrices, st.lists(small, min_size=5, max_size=5))
def test_solve_on_image(rows, coeffs):
    m = SparseMatrix.from_dense(rows)
    x = {i: Fraction(c) for i, c in enumerate(coeffs[: m.col_count]) if c}
    b = m.matvec(x)
    sol = solve(m, [b.get(i, 0) for i in range(m.row_count)])
    assert sol is not None
    assert m.matvec(dict(enumerate(sol))) == b


@given(matrices)
def test_echelon_matches_rank(rows):
    m = SparseMatrix.from_dense(rows)
    for leading in ("max", "min"):
        ech = Echelon(leading=leading)
        added = sum(ech.add(r) for r in m.rows())
        assert added == len(ech) == rank(m)
        for r in m.rows():
            assert ech.contains(r)
