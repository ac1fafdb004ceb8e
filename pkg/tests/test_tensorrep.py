import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kronbasis.errors import BudgetExceeded
from kronbasis.exactlin import Echelon, SparseRationalMatrix
from kronbasis.permcomb import Permutation, all_permutations, compose, lis, longest_element, partitions
from kronbasis.permcomb import hook_length_count
from kronbasis.tensorrep import (
    GroupAlgebraElement,
    all_tuples,
    embed,
    flat_index,
    kernel_dim,
    kron_power,
    kron_vector,
    phi,
    remark4_basis,
    reverse_translate,
    rsk_count,
    span_rank,
    theorem1_basis,
    theorem1_report,
    tuple_index,
)


def perm_matrix(w):
    n = len(w)
    return [[1 if i == w[j - 1] else 0 for j in range(1, n + 1)] for i in range(1, n + 1)]


def dense_kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def dense_kron_power(w, r):
    out = [[1]]
    for _ in range(r):
        out = dense_kron(out, perm_matrix(w))
    return out


def perms_upto(n):
    return st.integers(1, n).flatmap(lambda m: st.permutations(range(1, m + 1))).map(Permutation)


@given(perms_upto(4), st.integers(0, 3))
def test_kron_power_matches_dense_kronecker_product(w, r):
    assert kron_power(w, r).to_dense() == dense_kron_power(w, r)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.permutations(range(1, n + 1)),
                                                      st.permutations(range(1, n + 1)))),
       st.integers(1, 3))
def test_kron_power_is_a_homomorphism(pair, r):
    u, w = map(Permutation, pair)
    assert kron_power(compose(u, w), r) == kron_power(u, r) @ kron_power(w, r)


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_flat_index_roundtrip(n, r, data):
    idx = tuple(data.draw(st.integers(1, n)) for _ in range(r))
    assert tuple_index(flat_index(idx, n), n, r) == idx


def test_tuples_are_lexicographic():
    ts = all_tuples(3, 2)
    assert ts == sorted(ts) and len(ts) == 9
    assert [flat_index(t, 3) for t in ts] == list(range(9))


def test_phi_is_linear_and_multiplicative():
    n, r = 3, 2
    a = GroupAlgebraElement({(2, 1, 3): 2, (1, 2, 3): Fraction(-1, 3)})
    b = GroupAlgebraElement({(3, 1, 2): 1, (2, 1, 3): 5})
    s = GroupAlgebraElement({w: a.get(w, 0) + b.get(w, 0) for w in set(a) | set(b)})
    assert phi(s, r, n) == phi(a, r, n) + phi(b, r, n)
    assert phi(a * b, r, n) == phi(a, r, n) @ phi(b, r, n)


def test_vector_and_matrix_agree():
    w = Permutation((2, 3, 1))
    assert kron_vector(w, 2) == kron_power(w, 2).vectorize()


def dense_rank(n, r):
    ech = Echelon()
    for w in all_permutations(n):
        v = {}
        for k, x in enumerate(itertools.chain.from_iterable(dense_kron_power(w, r))):
            if x:
                v[k] = x
        ech.add(v)
    return ech.rank


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (3, 3), (5, 1)])
def test_span_rank_three_ways(n, r):
    rank_ = span_rank(n, r)
    assert rank_ == dense_rank(n, r)
    assert rank_ == sum(1 for w in all_permutations(n) if lis(w) >= n - r)
    assert rank_ == sum(hook_length_count(lam) ** 2 for lam in partitions(n) if lam[0] >= n - r)
    assert rank_ == rsk_count(n, r)
    assert kernel_dim(n, r) == factorial(n) - rank_


@pytest.mark.parametrize("n", range(1, 6))
def test_r1_rank_formula(n):
    assert span_rank(n, 1) == n * n - 2 * n + 2


@pytest.mark.parametrize("n", range(1, 5))
def test_full_rank_when_r_large(n):
    # r >= n - 1 makes every permutation eligible
    assert span_rank(n, max(n - 1, 0)) == factorial(n)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (4, 2), (5, 2)])
def test_theorem1_basis_and_decreasing_variant(n, r):
    inc = theorem1_basis(n, r, "increasing")
    dec = theorem1_basis(n, r, "decreasing")
    assert len(inc) == len(dec) == span_rank(n, r)
    assert sorted(reverse_translate(inc)) == sorted(dec)
    w0 = longest_element(n)
    assert {kron_power(compose(w, w0), r) for w in inc} == {kron_power(w, r) for w in dec}


def test_theorem1_report_fields():
    rep = theorem1_report(4, 2)
    assert rep["span_rank"] == rep["increasing_count"] == rep["decreasing_count"] == 23
    assert rep["kernel_dim"] == 1 and rep["w0_exchange"]


def test_bad_direction():
    with pytest.raises(ValueError):
        theorem1_basis(3, 1, "sideways")


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        span_rank(5, 3, budget=1000)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2)])
def test_remark4_basis(n, r):
    chosen = remark4_basis(n, r)
    assert all(w[-1] == n for w in chosen)
    ech = Echelon()
    for w in all_permutations(n - 1):
        ech.add(kron_vector(embed(w, n), r))
    assert len(chosen) == ech.rank


def test_group_algebra_product():
    s = Permutation((2, 1, 3))
    a = GroupAlgebraElement({s: 1, Permutation.identity(3): 1})
    sq = a * a
    assert sq == {Permutation.identity(3): 2, s: 2}


def test_sparse_matrix_type():
    assert isinstance(kron_power((1, 2), 2), SparseRationalMatrix)
