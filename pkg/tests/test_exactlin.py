import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kronbasis.exactlin import (
    DimensionError,
    Echelon,
    SparseRationalMatrix,
    format_fraction,
    independent,
    kernel_basis,
    linear_combination,
    lp_solve,
    mat_vec,
    parse_fraction,
    rank,
    read_matrix,
    rref,
    solve,
    subspace_contains,
    subspace_equal,
    verify_farkas,
    verify_point,
    write_matrix,
)

small = st.integers(-4, 4)


def dense_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def to_rows(M):
    return [{j: Fraction(x) for j, x in enumerate(row) if x} for row in M]


def bareiss_rank(M):
    """Oracle: fraction-free rank by dense Gaussian elimination with pivot search."""
    A = [[Fraction(x) for x in row] for row in M]
    r = 0
    ncols = len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


@given(dense_matrices())
def test_rank_matches_dense_oracle(M):
    assert rank(to_rows(M), len(M[0])) == bareiss_rank(M)


@given(dense_matrices())
def test_rank_of_transpose(M):
    T = [list(col) for col in zip(*M)]
    assert rank(to_rows(M)) == rank(to_rows(T))


@given(dense_matrices())
def test_kernel_is_kernel_and_has_right_dimension(M):
    n = len(M[0])
    rows = to_rows(M)
    ker = kernel_basis(rows, n)
    assert len(ker) == n - rank(rows, n)
    for v in ker:
        assert all(x == 0 for x in mat_vec(rows, v))
    assert independent(ker, n)


@given(dense_matrices())
def test_rref_properties(M):
    n = len(M[0])
    rows = to_rows(M)
    R, pivots = rref(rows, n)
    assert len(R) == len(pivots) == rank(rows, n)
    for row, p in zip(R, pivots):
        assert row[p] == 1
        assert all(other.get(p, 0) == 0 for other in R if other is not row)
    assert subspace_equal(R, rows, n)


@given(dense_matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_consistent_systems(M, xs):
    n = len(M[0])
    rows = to_rows(M)
    x0 = {j: Fraction(xs[j]) for j in range(n)}
    b = mat_vec(rows, x0)
    x = solve(rows, b, n)
    assert x is not None
    assert mat_vec(rows, x) == b


def test_solve_inconsistent():
    assert solve([{0: 1}, {0: 1}], [1, 2], 1) is None


def test_echelon_dimension_guard():
    ech = Echelon(3)
    with pytest.raises(DimensionError):
        ech.add({5: 1})


def test_echelon_contains():
    ech = Echelon()
    ech.add({0: 1, 1: 1})
    ech.add({1: 2, 2: 1})
    assert ech.contains({0: 2, 1: 4, 2: 1})
    assert not ech.contains({2: 1})
    assert ech.rank == 2


def test_subspace_containment():
    U = [{0: 1}, {1: 1}]
    V = [{0: 1, 1: -1}]
    assert subspace_contains(U, V, 3) and not subspace_contains(V, U, 3)
    assert not subspace_equal(U, V, 3)


@given(st.fractions(max_denominator=50))
def test_fraction_text_roundtrip(x):
    assert parse_fraction(format_fraction(x)) == x


def test_matrix_text_roundtrip(tmp_path):
    M = SparseRationalMatrix(2, 3, {(0, 1): Fraction(2, 5), (1, 2): -1})
    assert M.to_text() == "2 3\n0 1 2/5\n1 2 -1/1\n"
    path = tmp_path / "m.mtx"
    write_matrix(M, path)
    assert read_matrix(path) == M
    with pytest.raises(ValueError):
        SparseRationalMatrix.from_text("")


def test_matrix_arithmetic():
    A = SparseRationalMatrix.from_dense([[1, 2], [3, 4]])
    B = SparseRationalMatrix.from_dense([[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [4, 3]]
    assert (A - A).nnz() == 0
    assert A.transpose().to_dense() == [[1, 3], [2, 4]]
    assert A.row_sums() == [3, 7] and A.col_sums() == [4, 6]
    assert linear_combination([(2, A), (-1, B)]).to_dense() == [[2, 3], [5, 8]]
    assert SparseRationalMatrix.from_vector(A.vectorize(), 2, 2) == A
    with pytest.raises(DimensionError):
        A @ SparseRationalMatrix(3, 3)
    with pytest.raises(DimensionError):
        SparseRationalMatrix(2, 2, {(2, 0): 1})


# --------------------------------------------------------------------------
# linear programming against brute-force basis enumeration

def brute_force_lp(A, b, ncols, c):
    """Minimum of c.x over {A x = b, x >= 0}, trying every basic solution.

    Vertices are the nonnegative solutions supported on linearly independent
    column sets, so the polytope optimum is among them.
    """
    best = None
    for k in range(0, len(A) + 1):
        for cols in itertools.combinations(range(ncols), k):
            sub = [{i: row[j] for i, j in enumerate(cols) if row.get(j)} for row in A]
            if rank([{r: sub[r][i] for r in range(len(A)) if i in sub[r]} for i in range(k)], len(A)) < k:
                continue
            y = solve(sub, b, k)
            if y is None:
                continue
            x = [Fraction(0)] * ncols
            for i, j in enumerate(cols):
                x[j] = y.get(i, Fraction(0))
            if any(v < 0 for v in x):
                continue
            val = sum(ci * xi for ci, xi in zip(c, x))
            best = val if best is None else min(best, val)
    return best is not None, best


lp_rows = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3)


@given(lp_rows, st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(0, 5), min_size=4, max_size=4))
def test_lp_against_brute_force(M, rhs, cost):
    A = to_rows(M)
    b = [Fraction(x) for x in rhs[: len(A)]]
    n = 4
    # bounded: add sum(x) + slack = 6 so the feasible set is a polytope
    A = A + [{0: 1, 1: 1, 2: 1, 3: 1, 4: 1}]
    b = b + [Fraction(6)]
    c = cost + [0]
    res = lp_solve(A, b, n + 1, objective=dict(enumerate(c)))
    feas, best = brute_force_lp(A, b, n + 1, c)
    assert res.feasible == feas
    if feas:
        assert verify_point(A, b, range(n + 1), res.point)
        assert sum(ci * xi for ci, xi in zip(c, res.point)) == best
    else:
        assert verify_farkas(A, b, range(n + 1), n + 1, res.farkas)


def test_lp_infeasible_certificate():
    # x0 + x1 = -1 with x >= 0
    A, b = [{0: 1, 1: 1}], [-1]
    res = lp_solve(A, b, 2)
    assert not res.feasible
    assert verify_farkas(A, b, [0, 1], 2, res.farkas)


def test_lp_free_variables_return_vertices():
    # x free, y, z >= 0: x - y = 0, x + z = 1 ; minimize -x  -> x = 1
    A = [{0: 1, 1: -1}, {0: 1, 2: 1}]
    res = lp_solve(A, [0, 1], 3, nonneg=[1, 2], objective={0: -1})
    assert res.point == [1, 1, 0]


def test_lp_redundant_rows():
    A = [{0: 1, 1: 1}, {0: 2, 1: 2}, {0: 1}]
    res = lp_solve(A, [2, 4, 1], 2, objective={1: 1})
    assert res.point == [1, 1]


@given(st.lists(st.integers(1, 5), min_size=2, max_size=5))
def test_lp_simplex_objective(cost):
    # minimize over the standard simplex: optimum is the smallest cost
    n = len(cost)
    A = [{j: 1 for j in range(n)}]
    res = lp_solve(A, [1], n, objective=dict(enumerate(cost)))
    assert sum(c * x for c, x in zip(cost, res.point)) == min(cost)
