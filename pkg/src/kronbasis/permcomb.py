"""
Permutations, partitions, standard tableaux and the RSK correspondence.

Permutations of ``{1..n}`` are stored in one-line notation ``(w(1), ..., w(n))``.
Composition follows ``(u * w)(i) = u(w(i))`` so that ``P(u) P(w) = P(u * w)``
for the permutation matrices ``P(w) = [delta_{i, w(j)}]``.

>>> w = Permutation.parse("2 1 4 3")
>>> rsk(w)[2]
Partition((2, 2))
>>> lis(w), lds(w)
(2, 2)
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Optional, Sequence


class Permutation(tuple):
    """A bijection of ``{1..n}`` in one-line notation (a tuple subclass)."""

    def __new__(cls, word: Iterable[int]):
        word = tuple(int(x) for x in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word}")
        return super().__new__(cls, word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"2 1 4 3"`` (or a compact ``"2143"`` when n < 10)."""
        text = text.strip()
        if " " in text or "," in text:
            return cls(int(x) for x in text.replace(",", " ").split())
        return cls(int(c) for c in text)

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        word = list(range(1, n + 1))
        word[a - 1], word[b - 1] = b, a
        return cls(word)

    @classmethod
    def simple(cls, n: int, i: int) -> "Permutation":
        """The adjacent transposition ``s_i = (i, i+1)``."""
        return cls.transposition(n, i, i + 1)

    @classmethod
    def from_cycle(cls, n: int, cycle: Sequence[int]) -> "Permutation":
        """``(c1, c2, ..., ck)`` means ``c1 -> c2 -> ... -> ck -> c1``."""
        word = list(range(1, n + 1))
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            word[a - 1] = b
        return cls(word)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def to_text(self) -> str:
        return " ".join(str(x) for x in self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length > 1, each starting at its smallest entry."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self):
        return f"Permutation({tuple(self)})"


def compose(u: Sequence[int], w: Sequence[int]) -> Permutation:
    if len(u) != len(w):
        raise ValueError(f"size mismatch: {len(u)} != {len(w)}")
    return Permutation(u[x - 1] for x in w)


def inverse(w: Sequence[int]) -> Permutation:
    inv = [0] * len(w)
    for i, x in enumerate(w, start=1):
        inv[x - 1] = i
    return Permutation(inv)


def longest_element(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(range(n, 0, -1))


def reverse(w: Sequence[int]) -> Permutation:
    """``rev(w) = w * w0``: the word read backwards."""
    return Permutation(reversed(tuple(w)))


def length(w: Sequence[int]) -> int:
    """Coxeter length, i.e. the number of inversions."""
    return sum(1 for a, b in itertools.combinations(w, 2) if a > b)


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n in lexicographic order of one-line words."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def reduced_word(w: Sequence[int]) -> list[int]:
    """Indices ``[i1, ..., ik]`` with ``w = s_i1 * ... * s_ik`` and k = length(w)."""
    word = list(w)
    out = []
    # peel left descents: s_i * w swaps the values i and i+1
    while True:
        pos = {x: k for k, x in enumerate(word)}
        for i in range(1, len(word)):
            if pos[i] > pos[i + 1]:
                a, b = pos[i], pos[i + 1]
                word[a], word[b] = word[b], word[a]
                out.append(i)
                break
        else:
            return out


def bruhat_leq(y: Sequence[int], w: Sequence[int]) -> bool:
    """Bruhat-Chevalley order via the tableau criterion on sorted prefixes."""
    if len(y) != len(w):
        raise ValueError(f"size mismatch: {len(y)} != {len(w)}")
    for k in range(1, len(y)):
        if any(a > b for a, b in zip(sorted(y[:k]), sorted(w[:k]))):
            return False
    return True


def bruhat_leq_subword(y: Sequence[int], w: Sequence[int]) -> bool:
    """Subword criterion: y <= w iff y is a subexpression of a reduced word of w.

    Exponential in length(w); kept as an independent check of `bruhat_leq`.
    """
    n = len(w)
    target = tuple(y)
    gens = reduced_word(w)
    reach = {tuple(range(1, n + 1))}
    for i in gens:
        s = Permutation.simple(n, i)
        reach |= {tuple(compose(u, s)) for u in reach}
    return target in reach


def lis(w: Sequence[int]) -> int:
    """Longest increasing subsequence length (patience sorting)."""
    piles: list[int] = []
    for x in w:
        k = bisect.bisect_left(piles, x)
        if k == len(piles):
            piles.append(x)
        else:
            piles[k] = x
    return len(piles)


def lds(w: Sequence[int]) -> int:
    return lis([-x for x in w])


def lis_bruteforce(w: Sequence[int]) -> int:
    best = 0
    for k in range(len(w) + 1):
        for sub in itertools.combinations(w, k):
            if all(a < b for a, b in zip(sub, sub[1:])):
                best = max(best, k)
    return best


# --------------------------------------------------------------------------
# partitions

class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(int(x) for x in text.split(",") if x.strip())

    @property
    def weight(self) -> int:
        return sum(self)

    def transpose(self) -> "Partition":
        return transpose(self)

    def to_text(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


def transpose(lam: Sequence[int]) -> Partition:
    if not lam:
        return Partition(())
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``lam >= mu`` in dominance order (prefix sums)."""
    if sum(lam) != sum(mu):
        raise ValueError(f"weights differ: {sum(lam)} != {sum(mu)}")
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


def alpha(n: int, r: int) -> Partition:
    """The hook ``(n - r, 1^r)``."""
    if not 0 <= r < n:
        raise ValueError(f"alpha(n, r) needs 0 <= r < n, got n={n}, r={r}")
    return Partition((n - r,) + (1,) * r)


def partitions(n: int) -> list[Partition]:
    """Partitions of n in reverse lexicographic order, (n) first."""
    out: list[Partition] = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(Partition(acc))
            return
        for p in range(min(rem, cap), 0, -1):
            rec(rem - p, p, acc + [p])

    rec(n, n, [])
    return out


def hook_length_count(lam: Sequence[int]) -> int:
    """Number of standard tableaux of shape lam via the hook length formula."""
    n = sum(lam)
    conj = transpose(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod


# --------------------------------------------------------------------------
# tableaux

@dataclass(frozen=True, order=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        Partition(len(r) for r in rows)
        n = sum(len(r) for r in rows)
        if sorted(x for r in rows for x in r) != list(range(1, n + 1)):
            raise ValueError(f"entries must be 1..{n}: {rows}")
        for i, r in enumerate(rows):
            if any(a >= b for a, b in zip(r, r[1:])):
                raise ValueError(f"row {i} not increasing: {rows}")
            if i and any(rows[i - 1][j] >= r[j] for j in range(len(r))):
                raise ValueError(f"column violation at row {i}: {rows}")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    @classmethod
    def natural(cls, lam: Sequence[int]) -> "StandardTableau":
        """``t^lam``: 1..n filled along rows, top to bottom."""
        rows, k = [], 1
        for p in lam:
            rows.append(tuple(range(k, k + p)))
            k += p
        return cls(tuple(rows))

    def apply(self, w: Sequence[int]) -> "StandardTableau":
        """Replace every entry x by w(x); the result need not be standard."""
        rows = tuple(tuple(w[x - 1] for x in r) for r in self.rows)
        obj = object.__new__(StandardTableau)
        object.__setattr__(obj, "rows", rows)
        return obj

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def enumerate_tableaux(lam: Sequence[int]) -> list[StandardTableau]:
    """All standard tableaux of shape lam, by placing n, n-1, ... in corners."""
    lam = tuple(lam)

    @lru_cache(maxsize=None)
    def fill(shape):
        if not shape:
            return [()]
        n = sum(shape)
        out = []
        for i, p in enumerate(shape):
            if i + 1 < len(shape) and shape[i + 1] == p:
                continue  # not a corner
            smaller = list(shape)
            smaller[i] -= 1
            if smaller[i] == 0:
                smaller.pop()
            for rows in fill(tuple(smaller)):
                rows = list(rows) + [()] * (len(shape) - len(rows))
                rows[i] = rows[i] + (n,)
                out.append(tuple(rows))
        return out

    return sorted(StandardTableau(rows) for rows in fill(lam)) if lam else [StandardTableau(())]


def tableau_perm(t: StandardTableau) -> Permutation:
    """``d(t)``: the unique y with ``y t = t^lambda`` (entrywise)."""
    target = StandardTableau.natural(t.shape)
    word = [0] * t.n
    for row, nat in zip(t.rows, target.rows):
        for x, y in zip(row, nat):
            word[x - 1] = y
    return Permutation(word)


# --------------------------------------------------------------------------
# RSK

def rsk(w: Sequence[int]) -> tuple[StandardTableau, StandardTableau, Partition]:
    """Row insertion of ``w(1), ..., w(n)``; returns (insertion, recording, shape)."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(w, start=1):
        row = 0
        while True:
            if row == len(P):
                P.append([x])
                Q.append([step])
                break
            k = bisect.bisect_right(P[row], x)
            if k == len(P[row]):
                P[row].append(x)
                Q[row].append(step)
                break
            P[row][k], x = x, P[row][k]
            row += 1
    shape = Partition(len(r) for r in P)
    return StandardTableau(tuple(map(tuple, P))), StandardTableau(tuple(map(tuple, Q))), shape


def rsk_shape(w: Sequence[int]) -> Partition:
    return rsk(w)[2]


def inverse_rsk(P: StandardTableau, Q: StandardTableau) -> Permutation:
    if P.shape != Q.shape:
        raise ValueError("tableaux of different shapes")
    Pr = [list(r) for r in P.rows]
    pos = {}
    for i, r in enumerate(Q.rows):
        for j, x in enumerate(r):
            pos[x] = (i, j)
    n = P.n
    word = [0] * n
    for step in range(n, 0, -1):
        i, j = pos[step]
        x = Pr[i].pop(j)
        assert j == len(Pr[i])
        for row in range(i - 1, -1, -1):
            k = bisect.bisect_left(Pr[row], x) - 1
            Pr[row][k], x = x, Pr[row][k]
        word[step - 1] = x
        if not Pr[i]:
            Pr.pop(i)
    return Permutation(word)


# --------------------------------------------------------------------------
# consecutive cycles and the slot-filling grid

def consecutive_cycles(n: int) -> set[Permutation]:
    """Cycles rotating an interval ``[i, i+k-1]`` by one step, and their inverses."""
    out = {Permutation.identity(n)}
    for k in range(2, n + 1):
        for i in range(1, n - k + 2):
            cyc = list(range(i, i + k))
            out.add(Permutation.from_cycle(n, cyc))
            out.add(Permutation.from_cycle(n, cyc[::-1]))
    return out


def grid(n: int) -> list[list[Permutation]]:
    """Entry ``[k-1][j-1]``: value k in slot j, the other values increasing."""
    rows = []
    for k in range(1, n + 1):
        rest = [x for x in range(1, n + 1) if x != k]
        rows.append([Permutation(rest[: j - 1] + [k] + rest[j - 1:]) for j in range(1, n + 1)])
    return rows


def cycle_text(w: Permutation, start: Optional[int] = None) -> str:
    """Cycle notation as in ``(4,3,2)``; the identity prints as ``(1)``.

    A cycle through ``start`` is written beginning at ``start``; other cycles
    on an interval traversed downwards are written from their maximum.
    """
    cyc = w.cycles()
    if not cyc:
        return "(1)"
    out = []
    for c in cyc:
        if start is not None and start in c:
            k = c.index(start)
            c = c[k:] + c[:k]
        else:
            down = tuple(range(max(c), min(c) - 1, -1))
            if len(c) > 2 and set(c) == set(down) and all(w(a) == b for a, b in zip(down, down[1:])):
                c = down
        out.append("(" + ",".join(str(x) for x in c) + ")")
    return "".join(out)


def grid_text(n: int, cycles: bool = False) -> str:
    """The slot-filling grid as a text table, one-line words or cycles."""
    lines = []
    for k, row in enumerate(grid(n), start=1):
        if cycles:
            cells = [cycle_text(w, start=k) for w in row]
        else:
            cells = ["".join(map(str, w)) for w in row]
        lines.append("  ".join(cells))
    return "\n".join(lines) + "\n"


def iter_increasing(n: int, k: int) -> Iterator[Permutation]:
    """Elements of S_n whose longest increasing subsequence is at least k."""
    for w in all_permutations(n):
        if lis(w) >= k:
            yield w
