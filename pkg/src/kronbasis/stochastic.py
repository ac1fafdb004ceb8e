"""
Doubly stochastic matrices in the span of Kronecker powers.

Omega is the set of doubly stochastic matrices that are linear combinations of
the ``P(w)^{(x) r}``. Most geometry here is done in coordinates with respect to
the increasing-subsequence basis, which shrinks (n, r) = (4, 2) from 256
ambient entries to 23 coordinates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import VerificationError, check_budget
from .exactlin import (
    Echelon,
    SparseRationalMatrix,
    format_fraction,
    kernel_basis,
    lp_solve,
    rank,
    solve,
    subspace_equal,
    verify_farkas,
)
from .permcomb import Permutation, all_permutations
from .tensorrep import kron_image, kron_power, kron_vector, phi, theorem1_basis


# --------------------------------------------------------------------------
# the explicit linear description of span(Gamma)

def _digits(flat: int, n: int, r: int) -> tuple[int, ...]:
    out = [0] * r
    for k in range(r - 1, -1, -1):
        flat, out[k] = divmod(flat, n)
    return tuple(out)


def _flat(idx: Sequence[int], n: int) -> int:
    out = 0
    for i in idx:
        out = out * n + i
    return out


def section5_rows(n: int, r: int, conditions: str = "i,ii,iii") -> list[dict]:
    """Homogeneous equations on the entries x_{I,J} (unknown I * n^r + J).

    (i)   x_{I,J} = x_{I^s, J^s} for every place permutation s of 1..r;
    (ii)  x_{I,J} = 0 when exactly one of i1 = i2, j1 = j2 holds;
    (iii) sum_k x_{(k,I'),(j1,J')} = sum_k x_{(i1,I'),(k,J')}.
    """
    wanted = set(conditions.split(","))
    N = n ** r
    tuples = [_digits(f, n, r) for f in range(N)]
    rows = []
    if "i" in wanted:
        for sigma in itertools.permutations(range(r)):
            if list(sigma) == list(range(r)):
                continue
            for I in range(N):
                Is = _flat([tuples[I][s] for s in sigma], n)
                for J in range(N):
                    Js = _flat([tuples[J][s] for s in sigma], n)
                    a, b = I * N + J, Is * N + Js
                    if a < b:
                        rows.append({a: 1, b: -1})
    if "ii" in wanted and r >= 2:
        for I in range(N):
            for J in range(N):
                ti, tj = tuples[I], tuples[J]
                if (ti[0] == ti[1]) != (tj[0] == tj[1]):
                    rows.append({I * N + J: 1})
    if "iii" in wanted:
        stride = n ** (r - 1)
        for rest_i in range(stride):
            for rest_j in range(stride):
                for i1 in range(n):
                    for j1 in range(n):
                        eq: dict = {}
                        for k in range(n):
                            a = (k * stride + rest_i) * N + (j1 * stride + rest_j)
                            eq[a] = eq.get(a, 0) + 1
                            b = (i1 * stride + rest_i) * N + (k * stride + rest_j)
                            eq[b] = eq.get(b, 0) - 1
                        eq = {x: v for x, v in eq.items() if v}
                        if eq:
                            rows.append(eq)
    return rows


def section5_solution_space(n: int, r: int, budget: Optional[int] = None,
                            verify: bool = True) -> list[dict]:
    """Kernel basis of conditions (i)-(iii); optionally checked against span(Gamma)."""
    N = n ** r
    check_budget(N * N, budget, f"section5_solution_space({n}, {r})")
    if r == 0:
        return [{0: Fraction(1)}]
    sol = kernel_basis(section5_rows(n, r), N * N)
    if verify:
        gamma = [kron_vector(w, r) for w in all_permutations(n)]
        if not subspace_equal(sol, gamma, N * N):
            raise VerificationError(f"solution space of the entry conditions != span(Gamma) at ({n}, {r})")
    return sol


def j_tensor_i(n: int, r: int) -> SparseRationalMatrix:
    """``J_n (x) I_n^{(x)(r-1)}``."""
    N = n ** r
    stride = n ** (r - 1)
    return SparseRationalMatrix(N, N, {
        (a * stride + rest, b * stride + rest): 1
        for a in range(n) for b in range(n) for rest in range(stride)
    })


# --------------------------------------------------------------------------
# Omega in basis coordinates

@dataclass
class OmegaCoordinates:
    """Omega as ``{c : sum(c) = 1, A c >= 0}`` over the increasing basis.

    ``rows[k]`` is a distinct nonzero entry functional, ``entries[k]`` the
    flat positions (I * N + J) that share it.
    """
    n: int
    r: int
    basis: list[Permutation]
    rows: list[dict]
    entries: list[list[int]]
    entry_row: dict = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def N(self) -> int:
        return self.n ** self.r

    @classmethod
    def build(cls, n: int, r: int, budget: Optional[int] = None) -> "OmegaCoordinates":
        basis = theorem1_basis(n, r, "increasing", budget=budget)
        N = n ** r
        per_entry: dict[int, dict] = {}
        for k, w in enumerate(basis):
            for col, row in enumerate(kron_image(w, r)):
                per_entry.setdefault(row * N + col, {})[k] = 1
        index: dict = {}
        rows, entries, entry_row = [], [], {}
        for e in sorted(per_entry):
            key = tuple(sorted(per_entry[e]))
            if key not in index:
                index[key] = len(rows)
                rows.append(per_entry[e])
                entries.append([])
            entries[index[key]].append(e)
            entry_row[e] = index[key]
        return cls(n, r, basis, rows, entries, entry_row)

    def coordinates(self, M: SparseRationalMatrix) -> Optional[list[Fraction]]:
        """Coefficients of M in the basis, or None when M is outside the span."""
        N = self.N
        if M.shape != (N, N):
            raise ValueError(f"expected {N}x{N}, got {M.shape}")
        vec = M.vectorize()
        if any(e not in self.entry_row for e in vec):
            return None
        eqs, rhs = [], []
        for row, ents in zip(self.rows, self.entries):
            for e in ents:
                eqs.append(row)
                rhs.append(vec.get(e, 0))
        x = solve(eqs, rhs, self.dim)
        if x is None:
            return None
        return [Fraction(x.get(k, 0)) for k in range(self.dim)]

    def matrix(self, c: Sequence[Fraction]) -> SparseRationalMatrix:
        return phi({w: ck for w, ck in zip(self.basis, c) if ck}, self.r, self.n)

    def values(self, c: Sequence[Fraction]) -> list[Fraction]:
        """Value of every distinct entry functional at c."""
        return [sum((c[k] for k in row), Fraction(0)) for row in self.rows]


# --------------------------------------------------------------------------
# membership

def _check_square(M: SparseRationalMatrix, n: int, r: int) -> None:
    if M.shape != (n ** r, n ** r):
        raise ValueError(f"expected a {n ** r}x{n ** r} matrix, got {M.shape}")


def is_doubly_stochastic(M: SparseRationalMatrix) -> bool:
    if M.nrows != M.ncols:
        raise ValueError("matrix is not square")
    if any(v < 0 for v in M.entries.values()):
        return False
    return all(s == 1 for s in M.row_sums()) and all(s == 1 for s in M.col_sums())


def in_span(M: SparseRationalMatrix, n: int, r: int, coords: Optional[OmegaCoordinates] = None) -> bool:
    _check_square(M, n, r)
    coords = coords or OmegaCoordinates.build(n, r)
    return coords.coordinates(M) is not None


def omega_membership(M: SparseRationalMatrix, n: int, r: int,
                     coords: Optional[OmegaCoordinates] = None) -> bool:
    _check_square(M, n, r)
    return is_doubly_stochastic(M) and in_span(M, n, r, coords)


@dataclass(frozen=True)
class KroneckerDiagonal:
    w: Permutation
    entries: tuple[Fraction, ...]

    @property
    def positive(self) -> bool:
        return all(v > 0 for v in self.entries)


def kron_diagonal(M: SparseRationalMatrix, w: Sequence[int], r: int) -> KroneckerDiagonal:
    image = kron_image(w, r)
    return KroneckerDiagonal(Permutation(w), tuple(M[(row, col)] for col, row in enumerate(image)))


def positive_kron_diagonal(M: SparseRationalMatrix, n: int, r: int) -> Optional[Permutation]:
    """First w (lexicographic) whose Kronecker diagonal in M is entrywise positive."""
    _check_square(M, n, r)
    ents = M.entries
    for w in all_permutations(n):
        if all(ents.get((row, col), 0) > 0 for col, row in enumerate(kron_image(w, r))):
            return w
    return None


@dataclass
class OmegaPoint:
    matrix: SparseRationalMatrix
    n: int
    r: int
    coordinates: Optional[list[Fraction]] = None

    @classmethod
    def from_matrix(cls, M: SparseRationalMatrix, n: int, r: int,
                    coords: Optional[OmegaCoordinates] = None) -> "OmegaPoint":
        _check_square(M, n, r)
        coords = coords or OmegaCoordinates.build(n, r)
        c = coords.coordinates(M)
        if c is None or not is_doubly_stochastic(M):
            raise ValueError("matrix is not a doubly stochastic element of span(Gamma)")
        return cls(M, n, r, c)


@dataclass
class ConvexCertificate:
    """Convex weights reproducing M, or a Farkas vector proving M is outside conv(Gamma).

    ``farkas`` has one entry per matrix position (row-major) followed by one
    for the weights-sum-to-one equation.
    """
    weights: Optional[dict] = None
    farkas: Optional[list[Fraction]] = None

    @property
    def feasible(self) -> bool:
        return self.weights is not None

    def verify(self, M: SparseRationalMatrix, n: int, r: int) -> bool:
        if self.weights is not None:
            if any(c < 0 for c in self.weights.values()) or sum(self.weights.values()) != 1:
                return False
            return phi(self.weights, r, n) == M
        if self.farkas is None:
            return False
        y = self.farkas
        N = n ** r
        vec = M.vectorize()
        rhs = sum((y[e] * v for e, v in vec.items()), Fraction(0)) + y[N * N]
        if rhs <= 0:
            return False
        for w in all_permutations(n):
            s = y[N * N] + sum((y[row * N + col] for col, row in enumerate(kron_image(w, r))), Fraction(0))
            if s > 0:
                return False
        return True

    def to_json(self) -> dict:
        if self.weights is not None:
            return {"weights": {" ".join(map(str, w)): format_fraction(c)
                                for w, c in sorted(self.weights.items())}}
        return {"farkas": [format_fraction(v) for v in (self.farkas or [])]}


def conv_hull_membership(M: SparseRationalMatrix, n: int, r: int) -> ConvexCertificate:
    """Exact LP: is M a convex combination of the P(w)^{(x) r}?"""
    _check_square(M, n, r)
    N = n ** r
    perms = all_permutations(n)
    support: dict[int, dict] = {}
    for k, w in enumerate(perms):
        for col, row in enumerate(kron_image(w, r)):
            support.setdefault(row * N + col, {})[k] = 1
    vec = M.vectorize()
    keys = sorted(set(support) | set(vec))
    A = [support.get(e, {}) for e in keys] + [{k: 1 for k in range(len(perms))}]
    b = [vec.get(e, 0) for e in keys] + [1]
    res = lp_solve(A, b, len(perms))
    if res.feasible:
        weights = {w: c for w, c in zip(perms, res.point) if c}
        cert = ConvexCertificate(weights=weights)
    else:
        y = [Fraction(0)] * (N * N + 1)
        for e, ye in zip(keys, res.farkas):
            y[e] = ye
        y[N * N] = res.farkas[-1]
        assert verify_farkas(A, b, range(len(perms)), len(perms), res.farkas)
        cert = ConvexCertificate(farkas=y)
    if not cert.verify(M, n, r):
        raise VerificationError("convex-hull certificate failed exact verification")
    return cert


@dataclass
class DecompositionResult:
    success: bool
    steps: list[tuple[Permutation, Fraction]]
    residual: Optional[SparseRationalMatrix] = None

    @property
    def certificate(self) -> Optional[ConvexCertificate]:
        if not self.success:
            return None
        weights: dict = {}
        for w, c in self.steps:
            weights[w] = weights.get(w, 0) + c
        return ConvexCertificate(weights=weights)


def greedy_decompose(M: SparseRationalMatrix, n: int, r: int,
                     coords: Optional[OmegaCoordinates] = None) -> DecompositionResult:
    """Peel off ``c P(w)^{(x) r}`` along positive Kronecker diagonals.

    Each step takes the minimum diagonal entry c, replaces M by
    ``(M - c P) / (1 - c)`` and strictly increases the number of zeros.
    """
    if not omega_membership(M, n, r, coords):
        raise ValueError("input is not in Omega")
    steps: list[tuple[Permutation, Fraction]] = []
    remaining = Fraction(1)
    cur = M
    while True:
        w = positive_kron_diagonal(cur, n, r)
        if w is None:
            return DecompositionResult(False, steps, cur)
        c = min(kron_diagonal(cur, w, r).entries)
        if c == 1:
            steps.append((w, remaining))
            return DecompositionResult(True, steps)
        steps.append((w, remaining * c))
        nxt = (cur - kron_power(w, r).scale(c)).scale(1 / (1 - c))
        if nxt.nnz() >= cur.nnz():
            raise VerificationError("greedy step did not create a new zero")
        cur = nxt
        remaining *= 1 - c


# --------------------------------------------------------------------------
# the Roberson-Schmidt matrix

def roberson_schmidt_coefficients() -> dict:
    """-1/5 on the identity of S_4 and 1/5 on each of the six transpositions."""
    coeffs = {Permutation.identity(4): Fraction(-1, 5)}
    for a, b in itertools.combinations(range(1, 5), 2):
        coeffs[Permutation.transposition(4, a, b)] = Fraction(1, 5)
    return coeffs


def roberson_schmidt_matrix() -> OmegaPoint:
    M = phi(roberson_schmidt_coefficients(), 2)
    return OmegaPoint.from_matrix(M, 4, 2)


# --------------------------------------------------------------------------
# vertices

def is_vertex(M: SparseRationalMatrix, n: int, r: int,
              coords: Optional[OmegaCoordinates] = None) -> bool:
    """Active entry constraints plus the sum equation have full rank."""
    coords = coords or OmegaCoordinates.build(n, r)
    c = coords.coordinates(M)
    if c is None or not is_doubly_stochastic(M):
        raise ValueError("input is not in Omega")
    return _is_vertex_coords(coords, c)


def _is_vertex_coords(coords: OmegaCoordinates, c: Sequence[Fraction]) -> bool:
    d = coords.dim
    ech = Echelon(d)
    ech.add({k: 1 for k in range(d)})
    for row, val in zip(coords.rows, coords.values(c)):
        if val == 0:
            ech.add(row)
            if ech.rank == d:
                return True
    return ech.rank == d


def lp_vertex(coords: OmegaCoordinates, objective: Sequence[int]) -> list[Fraction]:
    """A vertex of Omega minimizing the given linear functional of the coordinates."""
    d = coords.dim
    m = len(coords.rows)
    # variables: c (free, 0..d-1), slack s_k = row_k . c >= 0 (d..d+m-1)
    A = []
    for k, row in enumerate(coords.rows):
        eq = dict(row)
        eq[d + k] = -1
        A.append(eq)
    A.append({k: 1 for k in range(d)})
    b = [0] * m + [1]
    res = lp_solve(A, b, d + m, nonneg=range(d, d + m),
                   objective={k: v for k, v in enumerate(objective) if v})
    if not res.feasible or res.unbounded:
        raise VerificationError("Omega LP unexpectedly infeasible or unbounded")
    return res.point[:d]


def sample_omega_points(n: int, r: int, count: int, seed: int = 0, pool: int = 8,
                        coords: Optional[OmegaCoordinates] = None) -> list[OmegaPoint]:
    """Seeded points of Omega: rational convex mixtures of LP-optimal vertices."""
    rng = random.Random(seed)
    coords = coords or OmegaCoordinates.build(n, r)
    d = coords.dim
    verts = []
    for _ in range(pool):
        obj = [rng.randint(-20, 20) for _ in range(d)]
        verts.append(lp_vertex(coords, obj))
    out = []
    for _ in range(count):
        k = rng.randint(1, min(4, len(verts)))
        chosen = rng.sample(verts, k)
        raw = [rng.randint(1, 9) for _ in range(k)]
        tot = sum(raw)
        c = [sum((Fraction(wt, tot) * v[j] for wt, v in zip(raw, chosen)), Fraction(0)) for j in range(d)]
        out.append(OmegaPoint(coords.matrix(c), n, r, c))
    return out




# --------------------------------------------------------------------------
# vertex enumeration

@dataclass
class VertexEnumeration:
    vertices: list[OmegaPoint]
    method: str
    complete: bool = True
    note: str = ""

    def keys(self) -> set[tuple]:
        return {tuple(v.coordinates) for v in self.vertices}


def _normalize_ray(ray: Sequence[int]) -> list[Fraction]:
    tot = sum(ray)
    if tot <= 0:
        raise VerificationError("extreme ray with nonpositive row sum; the cone is not the cone over Omega")
    return [Fraction(x, tot) for x in ray]


def _points(coords: OmegaCoordinates, cs: list[list[Fraction]]) -> list[OmegaPoint]:
    cs = sorted(cs)
    return [OmegaPoint(coords.matrix(c), coords.n, coords.r, c) for c in cs]


def enumerate_vertices_dd(n: int, r: int, max_rays: int = 200_000,
                          coords: Optional[OmegaCoordinates] = None) -> VertexEnumeration:
    """Vertices of Omega as the normalized extreme rays of ``{c : A c >= 0}``.

    That cone is pointed and every nonzero point has positive row sum, since
    ``A c >= 0`` makes ``sum c_w P(w)`` nonnegative and the basis is independent.
    """
    from .ddmethod import DDBudgetExceeded, extreme_rays

    coords = coords or OmegaCoordinates.build(n, r)
    if r == 0:
        return VertexEnumeration(_points(coords, [[Fraction(1)]]), "double-description")
    try:
        rays = extreme_rays(coords.rows, coords.dim, max_rays=max_rays)
    except DDBudgetExceeded as exc:
        # partial rays live in a larger intermediate cone: keep those that are vertices of Omega
        pts = []
        for x in exc.partial:
            if sum(x) <= 0:
                continue
            c = _normalize_ray(x)
            if all(v >= 0 for v in coords.values(c)) and _is_vertex_coords(coords, c):
                pts.append(c)
        return VertexEnumeration(_points(coords, pts), "double-description", complete=False,
                                 note=str(exc))
    return VertexEnumeration(_points(coords, [_normalize_ray(x) for x in rays]), "double-description")


def _basis_expansions(coords: OmegaCoordinates) -> dict:
    """Coordinates of every P(u)^{(x) r}, u in S_n, in the increasing basis."""
    out = {}
    for u in all_permutations(coords.n):
        c = coords.coordinates(kron_power(u, coords.r))
        if c is None:
            raise VerificationError(f"P({u}) outside its own span")
        out[u] = c
    return out


def _linear_map(images: list, d: int):
    def act(c):
        out = [Fraction(0)] * d
        for ck, img in zip(c, images):
            if ck:
                for j, v in enumerate(img):
                    if v:
                        out[j] += ck * v
        return out
    act.images = images
    return act


def symmetry_map(coords: OmegaCoordinates, a: Permutation, b: Permutation, transpose: bool = False,
                 expansions: Optional[dict] = None):
    """Coordinate map of M -> P(a)^{(x)r} M' P(b)^{(x)r}, M' = M^T or M; Omega is invariant."""
    from .permcomb import compose, inverse

    exp = expansions or _basis_expansions(coords)
    images = [exp[compose(compose(a, inverse(w) if transpose else w), b)] for w in coords.basis]
    return _linear_map(images, coords.dim)


def symmetry_generators(coords: OmegaCoordinates, expansions: Optional[dict] = None) -> list:
    """Maps for M -> P(s)M, M -> MP(s) over simple transpositions s, and M -> M^T."""
    n = coords.n
    exp = expansions or _basis_expansions(coords)
    e = Permutation.identity(n)
    maps = []
    for i in range(1, n):
        s_i = Permutation.simple(n, i)
        maps.append(symmetry_map(coords, s_i, e, expansions=exp))
        maps.append(symmetry_map(coords, e, s_i, expansions=exp))
    maps.append(symmetry_map(coords, e, e, transpose=True, expansions=exp))
    return maps


def _zero_set(coords: OmegaCoordinates, c: Sequence[Fraction]) -> frozenset:
    return frozenset(k for k, x in enumerate(coords.values(c)) if x == 0)


def _adjacent(coords: OmegaCoordinates, zu: frozenset, zv: frozenset) -> bool:
    """Algebraic edge test: the common tight rows cut out a line segment."""
    common = zu & zv
    d = coords.dim
    if len(common) < d - 2:
        return False
    return rank([coords.rows[k] for k in common], d) == d - 2


def edge_pivot(coords: OmegaCoordinates, v: Sequence[Fraction], objective: Sequence[int]) -> tuple:
    """Leave vertex v along an edge and stop at the next vertex.

    The edge direction is a vertex of the vertex figure
    ``{x : sum x = 0, a_e x >= 0 (e tight at v), sum_e a_e x = 1}`` chosen by
    the objective; the step length is the exact ratio test.
    """
    d = coords.dim
    vals = coords.values(v)
    tight = [k for k, x in enumerate(vals) if x == 0]
    A, b, nonneg = [], [], []
    norm: dict = {}
    for t, k in enumerate(tight):
        eq = dict(coords.rows[k])
        eq[d + t] = -1
        nonneg.append(d + t)
        A.append(eq)
        b.append(0)
        for j in coords.rows[k]:
            norm[j] = norm.get(j, 0) + 1
    A.append({j: 1 for j in range(d)})
    b.append(0)
    A.append(norm)
    b.append(1)
    res = lp_solve(A, b, d + len(tight), nonneg=nonneg,
                   objective={j: x for j, x in enumerate(objective) if x})
    if not res.feasible or res.unbounded:
        raise VerificationError("vertex figure LP infeasible or unbounded")
    delta = res.point[:d]
    dv = coords.values(delta)
    steps = [vals[k] / -dv[k] for k in range(len(vals)) if dv[k] < 0]
    if not steps:
        raise VerificationError("edge direction is unbounded in Omega")
    t = min(steps)
    return tuple(v[j] + t * delta[j] for j in range(d))


def _face_vertex(coords: OmegaCoordinates, tight: set, objective: Sequence[int]) -> Optional[tuple]:
    """An optimal vertex of the face of Omega where the rows in ``tight`` vanish."""
    d = coords.dim
    A, b, nonneg = [], [], []
    col = d
    for k, row in enumerate(coords.rows):
        eq = dict(row)
        if k not in tight:
            eq[col] = -1
            nonneg.append(col)
            col += 1
        A.append(eq)
        b.append(0)
    A.append({j: 1 for j in range(d)})
    b.append(1)
    res = lp_solve(A, b, col, nonneg=nonneg, objective={j: x for j, x in enumerate(objective) if x})
    if not res.feasible:
        return None
    return tuple(res.point[:d])


def _symmetric_probe(coords: OmegaCoordinates, maps: list, rng: random.Random) -> tuple:
    """Optimize over the points fixed by the given symmetries, then over the
    smallest face of Omega containing the optimum: always lands on a vertex."""
    d = coords.dim
    eqs = []
    for g in maps:
        for j in range(d):
            row = {k: img[j] for k, img in enumerate(g.images) if img[j]}
            row[j] = row.get(j, 0) - 1
            row = {k: x for k, x in row.items() if x}
            if row:
                eqs.append(row)
    B = kernel_basis(eqs, d)
    q = len(B)
    m = len(coords.rows)
    A, b = [], []
    for k, row in enumerate(coords.rows):
        eq = {}
        for t, vec in enumerate(B):
            x = sum((a * vec.get(j, 0) for j, a in row.items()), Fraction(0))
            if x:
                eq[t] = x
        eq[q + k] = -1
        A.append(eq)
        b.append(0)
    A.append({t: sum(vec.values()) for t, vec in enumerate(B) if sum(vec.values())})
    b.append(1)
    res = lp_solve(A, b, q + m, nonneg=range(q, q + m),
                   objective={t: rng.randint(-9, 9) for t in range(q)})
    lam = res.point[:q]
    c = [sum((lam[t] * vec.get(j, 0) for t, vec in enumerate(B)), Fraction(0)) for j in range(d)]
    if _is_vertex_coords(coords, c):
        return tuple(c)
    tight = {k for k, x in enumerate(coords.values(c)) if x == 0}
    return _face_vertex(coords, tight, [rng.randint(-9, 9) for _ in range(d)])


def enumerate_vertices_pivot(n: int, r: int, seed: int = 0, patience: int = 12,
                             probe_patience: int = 400,
                             coords: Optional[OmegaCoordinates] = None) -> VertexEnumeration:
    """Simplex-pivoting cross-check, independent of the double description code.

    Vertices are closed under the symmetries of Omega, so one representative
    per orbit is explored, starting from the Kronecker powers. Two probes,
    both exact simplex runs:

    * edge pivots at a representative v, with objective ``sum_{e in H} a_e``
      plus a small random term, where H is a random minimal set of rows tight
      at v meeting the support of every known edge direction (a zero optimum
      is a new edge); ``patience`` misses in a row end the walk at v;
    * LPs over the points fixed by one random symmetry, which reach
      vertices with large stabilizers that edge walks seldom hit (at (4, 2)
      the 18-vertex orbit is found this way about once in 75 probes).

    The search stops after ``probe_patience`` consecutive symmetric probes
    find nothing new. Not exhaustive by construction; agreement with the
    double description result is what gets checked.
    """
    rng = random.Random(seed)
    coords = coords or OmegaCoordinates.build(n, r)
    d = coords.dim
    if r == 0 or d == 1:
        return enumerate_vertices_dd(n, r, coords=coords)
    exp = _basis_expansions(coords)
    gens = symmetry_generators(coords, exp)
    perms = all_permutations(n)
    found: dict[tuple, frozenset] = {}
    reps: list[tuple] = []

    def close(c):
        if c in found:
            return False
        if not _is_vertex_coords(coords, list(c)):
            raise VerificationError("pivoting reached a non-vertex")
        reps.append(c)
        stack = [c]
        while stack:
            x = stack.pop()
            if x in found:
                continue
            found[x] = _zero_set(coords, x)
            for g in gens:
                y = tuple(g(x))
                if y not in found:
                    stack.append(y)
        return True

    def walk(v):
        zv = found[v]
        tight = sorted(zv)
        supports = []
        for u, zu in found.items():
            if u != v and _adjacent(coords, zu, zv):
                diff = coords.values([a - b for a, b in zip(u, v)])
                supports.append(frozenset(k for k in tight if diff[k]))
        misses = 0
        while misses < patience:
            order = tight[:]
            rng.shuffle(order)
            H: set = set()
            for k in order:
                if any(k in s and not (s & H) for s in supports):
                    H.add(k)
            for k in list(H):
                if all(s & (H - {k}) for s in supports):
                    H.discard(k)
            obj = [rng.randint(-3, 3) for _ in range(d)]
            for k in H:
                for j in coords.rows[k]:
                    obj[j] += 1000
            u = edge_pivot(coords, v, obj)
            if not close(u):
                misses += 1
                continue
            misses = 0
            diff = coords.values([a - b for a, b in zip(u, v)])
            supports.append(frozenset(k for k in tight if diff[k]))

    for c in exp.values():
        close(tuple(c))
    explored = 0
    probes = 0
    misses = 0
    while True:
        while explored < len(reps):
            walk(reps[explored])
            explored += 1
        if misses >= probe_patience:
            break
        # one symmetry at a time: two random ones usually fix only the barycenter
        maps = [symmetry_map(coords, rng.choice(perms), rng.choice(perms), rng.random() < 0.5, exp)]
        probes += 1
        misses = 0 if close(_symmetric_probe(coords, maps, rng)) else misses + 1
    pts = _points(coords, [list(x) for x in found])
    return VertexEnumeration(pts, "simplex-pivoting", complete=False,
                             note=f"{len(reps)} orbits, {probes} symmetric probes")


def enumerate_vertices(n: int, r: int, budget: Optional[int] = None, max_rays: int = 200_000,
                       cross_check: bool = False, seed: int = 0) -> VertexEnumeration:
    """All vertices of Omega (double description); optionally cross-checked by pivoting."""
    coords = OmegaCoordinates.build(n, r, budget=budget)
    result = enumerate_vertices_dd(n, r, max_rays=max_rays, coords=coords)
    for v in result.vertices:
        if not _is_vertex_coords(coords, v.coordinates):
            raise VerificationError("double description returned a non-vertex")
    if cross_check and result.complete:
        other = enumerate_vertices_pivot(n, r, seed=seed, coords=coords)
        if other.keys() != result.keys():
            raise VerificationError(
                f"vertex enumerations disagree: dd={len(result.vertices)} pivot={len(other.vertices)}")
        result.note = f"pivoting cross-check agrees ({other.note})"
    return result


def vertex_orbits(coords: OmegaCoordinates, vertices: Sequence[Sequence[Fraction]]) -> list[int]:
    """Sizes of the symmetry orbits partitioning a vertex set."""
    gens = symmetry_generators(coords)
    remaining = {tuple(v) for v in vertices}
    sizes = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = tuple(g(x))
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        remaining -= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


__all__ = [
    "section5_rows", "section5_solution_space", "j_tensor_i", "OmegaCoordinates",
    "is_doubly_stochastic", "in_span", "omega_membership", "KroneckerDiagonal",
    "kron_diagonal", "positive_kron_diagonal", "OmegaPoint", "ConvexCertificate",
    "conv_hull_membership", "DecompositionResult", "greedy_decompose",
    "roberson_schmidt_coefficients", "roberson_schmidt_matrix", "is_vertex", "lp_vertex",
    "sample_omega_points", "VertexEnumeration", "enumerate_vertices", "enumerate_vertices_dd",
    "enumerate_vertices_pivot", "symmetry_generators", "vertex_orbits",
]
