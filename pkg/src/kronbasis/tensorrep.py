"""
The diagonal action of S_n on tensor space and the span of Kronecker powers.

Basis tensors ``v_{i1} (x) ... (x) v_{ir}`` are ordered lexicographically, so the
tuple ``(i1, ..., ir)`` sits at flat index ``sum (i_k - 1) n^(r-k)``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterable, Literal, Mapping, Sequence

from .errors import VerificationError, check_budget
from .exactlin import Echelon, SparseRationalMatrix
from .permcomb import (
    Permutation,
    all_permutations,
    compose,
    hook_length_count,
    lds,
    lis,
    longest_element,
    partitions,
)

Direction = Literal["increasing", "decreasing"]


def flat_index(idx: Sequence[int], n: int) -> int:
    out = 0
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"tensor index {idx} out of range for n={n}")
        out = out * n + (i - 1)
    return out


def tuple_index(flat: int, n: int, r: int) -> tuple[int, ...]:
    if not 0 <= flat < n ** r:
        raise ValueError(f"flat index {flat} out of range for n={n}, r={r}")
    out = []
    for _ in range(r):
        flat, d = divmod(flat, n)
        out.append(d + 1)
    return tuple(reversed(out))


def all_tuples(n: int, r: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(1, n + 1), repeat=r))


def kron_image(w: Sequence[int], r: int) -> list[int]:
    """``image[col] = row`` of the single 1 in that column of ``P(w)^{(x) r}``."""
    n = len(w)
    out = [0]
    for _ in range(r):
        out = [x * n + (w[j] - 1) for x in out for j in range(n)]
    return out


def kron_power(w: Sequence[int], r: int) -> SparseRationalMatrix:
    """``P(w)^{(x) r}``, with ``P(w) = [delta_{i, w(j)}]``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    image = kron_image(w, r)
    N = len(image)
    return SparseRationalMatrix(N, N, {(row, col): 1 for col, row in enumerate(image)})


def kron_vector(w: Sequence[int], r: int) -> dict:
    """Row-major vectorization of ``kron_power(w, r)`` with integer entries."""
    image = kron_image(w, r)
    N = len(image)
    return {row * N + col: 1 for col, row in enumerate(image)}


class GroupAlgebraElement(dict):
    """Finitely supported map Permutation -> Fraction, i.e. ``sum a_w w``."""

    def __init__(self, data: Mapping | Iterable = ()):
        super().__init__()
        items = data.items() if isinstance(data, Mapping) else data
        n = None
        for w, a in items:
            w = Permutation(w)
            if n is None:
                n = w.n
            elif w.n != n:
                raise ValueError("support permutations must share one n")
            a = Fraction(a)
            if a:
                self[w] = self.get(w, 0) + a

    @property
    def n(self) -> int | None:
        return next(iter(self)).n if self else None

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        acc: dict = {}
        for u, a in self.items():
            for w, b in other.items():
                uw = compose(u, w)
                acc[uw] = acc.get(uw, 0) + a * b
        return GroupAlgebraElement({w: c for w, c in acc.items() if c})


def phi(a: Mapping[Sequence[int], object], r: int, n: int | None = None) -> SparseRationalMatrix:
    """``sum a_w P(w)^{(x) r}``; n is needed only for the zero element."""
    if not a:
        if n is None:
            raise ValueError("n required for the zero element")
        return SparseRationalMatrix(n ** r, n ** r, {})
    acc: dict = {}
    N = None
    for w, coef in a.items():
        coef = Fraction(coef)
        if not coef:
            continue
        image = kron_image(w, r)
        N = len(image)
        for col, row in enumerate(image):
            key = (row, col)
            acc[key] = acc.get(key, 0) + coef
    if N is None:
        N = len(next(iter(a))) ** r
    return SparseRationalMatrix(N, N, acc)


def _rank_cells(n: int, r: int) -> int:
    return n ** (2 * r) * factorial(n)


def span_rank(n: int, r: int, budget: int | None = None) -> int:
    """Exact rank of ``{P(w)^{(x) r} : w in S_n}``."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1, r >= 0")
    check_budget(_rank_cells(n, r), budget, f"span_rank({n}, {r})")
    ech = Echelon(n ** (2 * r))
    for w in all_permutations(n):
        ech.add(kron_vector(w, r))
    return ech.rank


def rsk_count(n: int, r: int) -> int:
    """``sum (f^lam)^2`` over partitions of n with first part >= n - r."""
    return sum(hook_length_count(lam) ** 2 for lam in partitions(n) if lam[0] >= n - r)


def kernel_dim(n: int, r: int, budget: int | None = None) -> int:
    return factorial(n) - span_rank(n, r, budget)


def _select(perms: Iterable[Permutation], k: int, direction: Direction) -> list[Permutation]:
    if direction == "increasing":
        return [w for w in perms if lis(w) >= k]
    if direction == "decreasing":
        return [w for w in perms if lds(w) >= k]
    raise ValueError(f"unknown direction {direction!r}")


def theorem1_basis(n: int, r: int, direction: Direction = "increasing",
                   budget: int | None = None, verify: bool = True) -> list[Permutation]:
    """Permutations with an increasing (or decreasing) subsequence of length n - r.

    With ``verify`` the Kronecker powers are checked to be independent and to
    have the same count as the rank of the full span; a failure raises
    VerificationError.
    """
    basis = _select(all_permutations(n), n - r, direction)
    if verify:
        check_budget(_rank_cells(n, r), budget, f"theorem1_basis({n}, {r})")
        ech = Echelon(n ** (2 * r))
        if not all(ech.add(kron_vector(w, r)) for w in basis):
            raise VerificationError(f"basis for (n={n}, r={r}, {direction}) is dependent")
        full = span_rank(n, r, budget)
        if full != len(basis):
            raise VerificationError(f"basis size {len(basis)} != span rank {full}")
    return basis


def reverse_translate(perms: Iterable[Sequence[int]]) -> list[Permutation]:
    """Right multiplication by w0, i.e. reading each word backwards."""
    out = []
    for w in perms:
        out.append(compose(w, longest_element(len(w))))
    return out


def embed(w: Sequence[int], n: int) -> Permutation:
    """View w in S_m (m < n) as an element of S_n fixing m+1..n."""
    return Permutation(tuple(w) + tuple(range(len(w) + 1, n + 1)))


def remark4_basis(n: int, r: int, direction: Direction = "increasing",
                  budget: int | None = None, verify: bool = True) -> list[Permutation]:
    """Elements of S_{n-1} (fixing n) with a monotone subsequence of length n-1-r.

    Verified as a basis of the span of their Kronecker powers on (C^n)^{(x) r}.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    sub = all_permutations(n - 1)
    chosen = [embed(w, n) for w in _select(sub, n - 1 - r, direction)]
    if verify:
        check_budget(n ** (2 * r) * factorial(n - 1), budget, f"remark4_basis({n}, {r})")
        ech = Echelon(n ** (2 * r))
        if not all(ech.add(kron_vector(w, r)) for w in chosen):
            raise VerificationError(f"remark 4 set for (n={n}, r={r}) is dependent")
        full = Echelon(n ** (2 * r))
        for w in sub:
            full.add(kron_vector(embed(w, n), r))
        if full.rank != len(chosen):
            raise VerificationError(f"remark 4 set size {len(chosen)} != rank {full.rank}")
    return chosen


def theorem1_report(n: int, r: int, budget: int | None = None) -> dict:
    """All the counts tied to one instance, plus the w0-exchange check."""
    inc = theorem1_basis(n, r, "increasing", budget)
    dec = theorem1_basis(n, r, "decreasing", budget)
    rank_ = span_rank(n, r, budget)
    exchanged = sorted(reverse_translate(inc)) == sorted(dec)
    # the same exchange at the matrix level: P(w)^r P(w0)^r = P(w w0)^r
    w0r = kron_power(longest_element(n), r)
    matrix_exchange = {kron_power(w, r) @ w0r for w in inc} == {kron_power(w, r) for w in dec}
    return {
        "n": n,
        "r": r,
        "span_rank": rank_,
        "increasing_count": len(inc),
        "decreasing_count": len(dec),
        "rsk_count": rsk_count(n, r),
        "kernel_dim": factorial(n) - rank_,
        "w0_exchange": exchanged and matrix_exchange,
        "increasing": [w.to_text() for w in inc],
    }
