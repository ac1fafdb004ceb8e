"""
Partition-algebra diagrams acting on tensor space, and the S_n commutant.

A diagram is a set partition of the labels ``1..r`` (top) and ``1'..r'``
(bottom). Internally label ``k`` is stored as ``k - 1`` and ``k'`` as
``r + k - 1``. A diagram acts on ``(C^n)^{(x) r}`` by the 0/1 matrix whose
``(i, j)`` entry is 1 exactly when the labelling ``k -> i_k``, ``k' -> j_k``
is constant on every block.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import VerificationError, check_budget
from .exactlin import Echelon, SparseRationalMatrix, kernel_basis, subspace_equal
from .permcomb import Permutation, all_permutations
from .tensorrep import flat_index, kron_power, kron_vector, span_rank


@dataclass(frozen=True, order=True)
class SetPartitionDiagram:
    r: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        flat = sorted(x for b in blocks for x in b)
        if any(not b for b in blocks) or flat != list(range(2 * self.r)):
            raise ValueError(f"blocks do not partition the {2 * self.r} labels: {self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    def label(self, k: int) -> str:
        return str(k + 1) if k < self.r else f"{k - self.r + 1}'"

    def to_text(self) -> str:
        return "".join("{" + ",".join(self.label(k) for k in b) + "}" for b in self.blocks)

    @classmethod
    def parse(cls, text: str, r: int) -> "SetPartitionDiagram":
        blocks = []
        for body in re.findall(r"\{([^}]*)\}", text):
            block = []
            for tok in body.split(","):
                tok = tok.strip()
                block.append(int(tok[:-1]) + r - 1 if tok.endswith("'") else int(tok) - 1)
            blocks.append(tuple(block))
        return cls(r, tuple(blocks))

    def __str__(self):
        return self.to_text()


def set_partitions(m: int) -> list[tuple[tuple[int, ...], ...]]:
    """All set partitions of ``range(m)`` via restricted growth strings."""
    out = []

    def rec(k, rgs, nblocks):
        if k == m:
            blocks = [[] for _ in range(nblocks)]
            for x, b in enumerate(rgs):
                blocks[b].append(x)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in range(nblocks + 1):
            rgs.append(b)
            rec(k + 1, rgs, max(nblocks, b + 1))
            rgs.pop()

    if m == 0:
        return [()]
    rec(0, [], 0)
    return out


def enumerate_diagrams(r: int) -> list[SetPartitionDiagram]:
    if r < 1:
        raise ValueError("r must be positive")
    return sorted(SetPartitionDiagram(r, p) for p in set_partitions(2 * r))


def identity_diagram(r: int) -> SetPartitionDiagram:
    return SetPartitionDiagram(r, tuple((k, r + k) for k in range(r)))


def place_permutation_diagram(r: int, sigma: Sequence[int]) -> SetPartitionDiagram:
    """Top vertex ``sigma(k)`` joined to bottom vertex ``k'``."""
    return SetPartitionDiagram(r, tuple((sigma[k] - 1, r + k) for k in range(r)))


def p1_diagram(r: int) -> SetPartitionDiagram:
    """``{1}{1'}`` and ``{k, k'}`` for k >= 2; acts as ``J_n (x) I^{(x)(r-1)}``."""
    return SetPartitionDiagram(r, ((0,), (r,)) + tuple((k, r + k) for k in range(1, r)))


def p3half_diagram(r: int) -> SetPartitionDiagram:
    """``{1, 2, 1', 2'}`` and ``{k, k'}`` for k >= 3."""
    if r < 2:
        raise ValueError("p_{3/2} needs r >= 2")
    return SetPartitionDiagram(r, ((0, 1, r, r + 1),) + tuple((k, r + k) for k in range(2, r)))


def generator_diagrams(r: int) -> list[SetPartitionDiagram]:
    """Adjacent place permutations, p1 and (for r >= 2) p_{3/2}."""
    gens = []
    for k in range(1, r):
        gens.append(place_permutation_diagram(r, Permutation.simple(r, k)))
    gens.append(p1_diagram(r))
    if r >= 2:
        gens.append(p3half_diagram(r))
    return gens


def diagram_action(d: SetPartitionDiagram, n: int) -> SparseRationalMatrix:
    """Psi(d): sum over all block-constant labellings of the label set."""
    if n < 1:
        raise ValueError("n must be positive")
    r = d.r
    N = n ** r
    entries = {}
    for values in itertools.product(range(1, n + 1), repeat=len(d.blocks)):
        lab = [0] * (2 * r)
        for b, val in zip(d.blocks, values):
            for k in b:
                lab[k] = val
        entries[(flat_index(lab[:r], n), flat_index(lab[r:], n))] = 1
    return SparseRationalMatrix(N, N, entries)


def _pattern(labels: Sequence[int]) -> tuple[int, ...]:
    """Relabel values by order of first appearance: the S_n-orbit invariant."""
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def orbit_commutant_basis(n: int, r: int) -> list[SparseRationalMatrix]:
    """Indicator matrices of the S_n-orbits on pairs of index tuples."""
    N = n ** r
    orbits: dict[tuple, dict] = {}
    for row in range(N):
        i = _digits(row, n, r)
        for col in range(N):
            key = _pattern(i + _digits(col, n, r))
            orbits.setdefault(key, {})[(row, col)] = 1
    return [SparseRationalMatrix(N, N, orbits[k]) for k in sorted(orbits)]


def _digits(flat: int, n: int, r: int) -> tuple[int, ...]:
    out = [0] * r
    for k in range(r - 1, -1, -1):
        flat, out[k] = divmod(flat, n)
    return tuple(out)


def commutes(a: SparseRationalMatrix, b: SparseRationalMatrix) -> bool:
    return a @ b == b @ a


def centralizer(mats: Sequence[SparseRationalMatrix]) -> list[dict]:
    """Basis (row-major vectors) of ``{X : X G = G X for all G in mats}``."""
    N = mats[0].nrows
    rows = []
    for g in mats:
        by_row: dict[int, list] = {}
        by_col: dict[int, list] = {}
        for (i, j), v in g.entries.items():
            by_row.setdefault(i, []).append((j, v))
            by_col.setdefault(j, []).append((i, v))
        for a in range(N):
            for b in range(N):
                eq: dict = {}
                # (X G)_{ab} = sum_c X_{ac} G_{cb}
                for c, v in by_col.get(b, ()):
                    k = a * N + c
                    eq[k] = eq.get(k, 0) + v
                # (G X)_{ab} = sum_c G_{ac} X_{cb}
                for c, v in by_row.get(a, ()):
                    k = c * N + b
                    eq[k] = eq.get(k, 0) - v
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return kernel_basis(rows, N * N)


def schur_weyl_check(n: int, r: int, budget: int | None = None) -> dict:
    """Both halves of the double-centralizer statement for one (n, r).

    (1) the diagram images span the S_n commutant (orbit basis);
    (2) the centralizer of the diagram images equals span of the Kronecker
        powers, computed twice: from the explicit linear conditions on
        entries and from commutation with the generating diagrams.
    """
    from .stochastic import section5_solution_space

    N = n ** r
    check_budget(N * N * max(len(enumerate_diagrams(r)), 1), budget, f"schur_weyl_check({n}, {r})")
    psi = [diagram_action(d, n).vectorize() for d in enumerate_diagrams(r)]
    orbit = [m.vectorize() for m in orbit_commutant_basis(n, r)]
    ech = Echelon(N * N)
    for v in psi:
        ech.add(v)
    dim_psi = ech.rank
    commutant_ok = subspace_equal(psi, orbit, N * N)

    gamma = [kron_vector(w, r) for w in all_permutations(n)]
    sec5 = section5_solution_space(n, r, budget=budget, verify=False)
    gens = centralizer([diagram_action(d, n) for d in generator_diagrams(r)])
    bicommutant_ok = subspace_equal(sec5, gamma, N * N)
    generators_ok = subspace_equal(gens, gamma, N * N)
    rank_gamma = span_rank(n, r, budget)
    report = {
        "n": n,
        "r": r,
        "dim_commutant": len(orbit),
        "dim_psi_span": dim_psi,
        "dim_bicommutant": len(sec5),
        "dim_generator_centralizer": len(gens),
        "span_rank": rank_gamma,
        "commutant_equal": commutant_ok,
        "bicommutant_equal": bicommutant_ok,
        "generator_centralizer_equal": generators_ok,
    }
    report["pass"] = commutant_ok and bicommutant_ok and generators_ok and len(sec5) == rank_gamma
    if not report["pass"]:
        raise VerificationError(f"Schur-Weyl check failed: {report}")
    return report


def commutation_check(n: int, r: int) -> bool:
    """Every diagram image commutes with the Kronecker powers of the s_i."""
    gens = [kron_power(Permutation.simple(n, i), r) for i in range(1, n)]
    return all(commutes(diagram_action(d, n), g) for d in enumerate_diagrams(r) for g in gens)


def bell(m: int) -> int:
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def diagram_span_dim(n: int, r: int) -> int:
    ech = Echelon((n ** r) ** 2)
    for d in enumerate_diagrams(r):
        ech.add(diagram_action(d, n).vectorize())
    return ech.rank


__all__ = [
    "SetPartitionDiagram", "enumerate_diagrams", "diagram_action", "orbit_commutant_basis",
    "schur_weyl_check", "centralizer", "generator_diagrams", "commutation_check",
    "identity_diagram", "p1_diagram", "p3half_diagram", "place_permutation_diagram",
    "set_partitions", "bell", "diagram_span_dim", "commutes",
]
