"""
Exact linear algebra over the rationals.

Vectors are sparse dicts ``{index: value}`` with int or Fraction values and no
stored zeros. Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

Number = Union[int, Fraction]
SparseVector = dict


class DimensionError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def format_fraction(x: Number) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def sparse(vec: Union[Mapping[int, Number], Sequence[Number]]) -> dict:
    """Normalize a dense list or a dict into a zero-free sparse dict."""
    items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
    return {i: v for i, v in items if v != 0}


def dot(u: Mapping[int, Number], v: Mapping[int, Number]) -> Fraction:
    if len(u) > len(v):
        u, v = v, u
    return sum((x * v[i] for i, x in u.items() if i in v), Fraction(0))


def axpy(a: Number, x: Mapping[int, Number], y: dict) -> dict:
    """Return ``y + a x`` as a new sparse dict."""
    out = dict(y)
    for i, xi in x.items():
        s = out.get(i, 0) + a * xi
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def _primitive(vec: Mapping[int, Number]) -> dict:
    """Scale a rational vector to a primitive integer vector (positive lead)."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = {i: int(v * den) for i, v in vec.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    return {i: v // g for i, v in ints.items()}


class Echelon:
    """Incrementally maintained row echelon form of a set of vectors.

    Rows are primitive integer vectors, keyed by their leading (smallest)
    index. Suitable for rank, independence and span-membership questions.
    """

    def __init__(self, dim: Optional[int] = None):
        self.dim = dim
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, Number]) -> dict:
        v = sparse(vec)
        if self.dim is not None and v and (min(v) < 0 or max(v) >= self.dim):
            raise DimensionError(f"index out of range for dimension {self.dim}")
        if not v:
            return v
        v = _primitive(v)
        while v:
            c = min(v)
            row = self.pivots.get(c)
            if row is None:
                return v
            a, b = row[c], v[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            # a*v - b*row kills column c; the lead of row is c so only cols >= c change
            out = {i: a * x for i, x in v.items()}
            for i, x in row.items():
                s = out.get(i, 0) - b * x
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
            v = _primitive(out) if out else out
        return v

    def add(self, vec: Mapping[int, Number]) -> bool:
        """Insert vec; return True iff it was independent of the rows so far."""
        v = self.reduce(vec)
        if not v:
            return False
        self.pivots[min(v)] = v
        return True

    def contains(self, vec: Mapping[int, Number]) -> bool:
        return not self.reduce(vec)


def rank(rows: Iterable[Mapping[int, Number]], dim: Optional[int] = None) -> int:
    ech = Echelon(dim)
    for r in rows:
        ech.add(r)
    return ech.rank


def independent(rows: Iterable[Mapping[int, Number]], dim: Optional[int] = None) -> bool:
    ech = Echelon(dim)
    return all(ech.add(r) for r in rows)


def subspace_equal(U: Sequence[Mapping[int, Number]], V: Sequence[Mapping[int, Number]],
                   dim: Optional[int] = None) -> bool:
    """span(U) == span(V), decided by rank(U) == rank(V) == rank(U + V)."""
    eu, ev = Echelon(dim), Echelon(dim)
    for u in U:
        eu.add(u)
    for v in V:
        ev.add(v)
    if eu.rank != ev.rank:
        return False
    return all(eu.contains(v) for v in ev.pivots.values())


def subspace_contains(U: Sequence[Mapping[int, Number]], V: Sequence[Mapping[int, Number]],
                      dim: Optional[int] = None) -> bool:
    """span(V) is a subspace of span(U)."""
    eu = Echelon(dim)
    for u in U:
        eu.add(u)
    return all(eu.contains(v) for v in V)


def rref(rows: Sequence[Mapping[int, Number]], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    pivots: dict[int, dict] = {}
    for r in rows:
        v = {i: as_fraction(x) for i, x in sparse(r).items()}
        if v and (min(v) < 0 or max(v) >= ncols):
            raise DimensionError(f"row index out of range for {ncols} columns")
        while v:
            c = min(v)
            if c in pivots:
                v = axpy(-v[c], pivots[c], v)
            else:
                lead = v[c]
                pivots[c] = {i: x / lead for i, x in v.items()}
                break
    # back substitution, highest pivot first
    cols = sorted(pivots)
    for c in reversed(cols):
        row = pivots[c]
        for c2 in cols:
            if c2 >= c:
                break
            other = pivots[c2]
            if c in other:
                pivots[c2] = axpy(-other[c], row, other)
    return [pivots[c] for c in cols], cols


def kernel_basis(rows: Sequence[Mapping[int, Number]], ncols: int) -> list[dict]:
    """A basis of ``{x : A x = 0}``, one vector per free column."""
    reduced, pcols = rref(rows, ncols)
    pset = set(pcols)
    out = []
    for f in range(ncols):
        if f in pset:
            continue
        vec = {f: Fraction(1)}
        for row, p in zip(reduced, pcols):
            if f in row:
                vec[p] = -row[f]
        out.append(vec)
    return out


def solve(rows: Sequence[Mapping[int, Number]], b: Sequence[Number], ncols: int) -> Optional[dict]:
    """Some x with ``A x = b`` (free variables set to 0), or None."""
    if len(rows) != len(b):
        raise DimensionError(f"{len(rows)} rows but {len(b)} right-hand sides")
    aug = []
    for r, bi in zip(rows, b):
        v = sparse(r)
        if v and (min(v) < 0 or max(v) >= ncols):
            raise DimensionError(f"row index out of range for {ncols} columns")
        if bi:
            v[ncols] = bi
        aug.append(v)
    reduced, pcols = rref(aug, ncols + 1)
    if pcols and pcols[-1] == ncols:
        return None
    return {p: row[ncols] for row, p in zip(reduced, pcols) if ncols in row}


def mat_vec(rows: Sequence[Mapping[int, Number]], x: Mapping[int, Number]) -> list[Fraction]:
    return [dot(r, x) for r in rows]


# --------------------------------------------------------------------------
# sparse matrices

@dataclass(frozen=True)
class SparseRationalMatrix:
    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise DimensionError(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
            if v != 0:
                clean[(i, j)] = as_fraction(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def identity(cls, k: int) -> "SparseRationalMatrix":
        return cls(k, k, {(i, i): 1 for i in range(k)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]]) -> "SparseRationalMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls(nr, nc, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def from_vector(cls, vec: Mapping[int, Number], nrows: int, ncols: int) -> "SparseRationalMatrix":
        return cls(nrows, ncols, {divmod(k, ncols): v for k, v in vec.items()})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> Fraction:
        return self.entries.get(ij, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        self._check_same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseRationalMatrix(self.nrows, self.ncols, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a: Number) -> "SparseRationalMatrix":
        return SparseRationalMatrix(self.nrows, self.ncols, {k: a * v for k, v in self.entries.items()})

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseRationalMatrix(self.nrows, other.ncols, out)

    def transpose(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def row_sums(self) -> list[Fraction]:
        out = [Fraction(0)] * self.nrows
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def col_sums(self) -> list[Fraction]:
        out = [Fraction(0)] * self.ncols
        for (_, j), v in self.entries.items():
            out[j] += v
        return out

    def vectorize(self) -> dict:
        """Row-major flattening ``(i, j) -> i * ncols + j``."""
        return {i * self.ncols + j: v for (i, j), v in self.entries.items()}

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def nnz(self) -> int:
        return len(self.entries)

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        for (i, j) in sorted(self.entries):
            lines.append(f"{i} {j} {format_fraction(self.entries[(i, j)])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix file")
        nr, nc = (int(x) for x in lines[0].split())
        entries = {}
        for ln in lines[1:]:
            i, j, val = ln.split()
            entries[(int(i), int(j))] = parse_fraction(val)
        return cls(nr, nc, entries)


def write_matrix(m: SparseRationalMatrix, path: Union[str, Path]) -> None:
    Path(path).write_text(m.to_text())


def read_matrix(path: Union[str, Path]) -> SparseRationalMatrix:
    return SparseRationalMatrix.from_text(Path(path).read_text())


def linear_combination(coeffs: Iterable[tuple[Number, SparseRationalMatrix]]) -> SparseRationalMatrix:
    acc: dict = {}
    shape = None
    for a, m in coeffs:
        if shape is None:
            shape = m.shape
        elif shape != m.shape:
            raise DimensionError(f"shape mismatch {shape} vs {m.shape}")
        for k, v in m.entries.items():
            acc[k] = acc.get(k, 0) + a * v
    if shape is None:
        raise ValueError("empty combination")
    return SparseRationalMatrix(shape[0], shape[1], acc)


# --------------------------------------------------------------------------
# exact simplex

class LPError(ValueError):
    pass


@dataclass
class LPResult:
    """Either ``point`` (feasible) or ``farkas`` (infeasible) is set, never both.

    ``farkas`` is a vector y over the equality rows with ``y.A <= 0`` on the
    nonnegative columns, ``y.A == 0`` on free columns and ``y.b > 0``.
    """
    point: Optional[list[Fraction]] = None
    farkas: Optional[list[Fraction]] = None
    objective: Optional[Fraction] = None
    unbounded: bool = False

    @property
    def feasible(self) -> bool:
        return self.point is not None


def verify_farkas(A: Sequence[Mapping[int, Number]], b: Sequence[Number], nonneg: Iterable[int],
                  ncols: int, y: Sequence[Number]) -> bool:
    nonneg = set(nonneg)
    yA = [Fraction(0)] * ncols
    for yi, row in zip(y, A):
        if yi:
            for j, a in row.items():
                yA[j] += yi * a
    if any(yA[j] > 0 for j in nonneg) or any(yA[j] != 0 for j in range(ncols) if j not in nonneg):
        return False
    return sum((yi * bi for yi, bi in zip(y, b)), Fraction(0)) > 0


def verify_point(A, b, nonneg, x) -> bool:
    if any(x[j] < 0 for j in nonneg):
        return False
    return all(dot(row, dict(enumerate(x))) == bi for row, bi in zip(A, b))


def lp_solve(A: Sequence[Mapping[int, Number]], b: Sequence[Number], ncols: int,
             nonneg: Optional[Iterable[int]] = None,
             objective: Optional[Mapping[int, Number]] = None) -> LPResult:
    """Two-phase dense-tableau simplex over Q with Bland's rule.

    Minimizes ``objective . x`` over ``A x = b`` with ``x_j >= 0`` for j in
    nonneg (default: all columns). Without an objective only phase I runs.
    """
    if len(A) != len(b):
        raise LPError(f"{len(A)} rows but {len(b)} right-hand sides")
    nonneg = set(range(ncols)) if nonneg is None else set(nonneg)
    if any(not 0 <= j < ncols for j in nonneg):
        raise LPError("nonneg index out of range")
    for row in A:
        if row and (min(row) < 0 or max(row) >= ncols):
            raise LPError("row index out of range")

    # free columns become x+ - x-: column j -> j, extra column for -x_j
    free = [j for j in range(ncols) if j not in nonneg]
    neg_col = {j: ncols + k for k, j in enumerate(free)}
    nstd = ncols + len(free)

    # drop duplicated equations; remember where each original row went
    seen: dict = {}
    rows, rhs, origin = [], [], []
    for k, (row, bk) in enumerate(zip(A, b)):
        key = (tuple(sorted(sparse(row).items())), as_fraction(bk))
        if key in seen:
            continue
        seen[key] = k
        rows.append(row)
        rhs.append(as_fraction(bk))
        origin.append(k)
    m = len(rows)
    sign = [1] * m
    T: list[list[Fraction]] = []
    width = nstd + m + 1
    for i, (row, bi) in enumerate(zip(rows, rhs)):
        s = -1 if bi < 0 else 1
        sign[i] = s
        t = [Fraction(0)] * width
        for j, a in row.items():
            t[j] = Fraction(s * a)
            if j in neg_col:
                t[neg_col[j]] = Fraction(-s * a)
        t[nstd + i] = Fraction(1)
        t[-1] = s * bi
        T.append(t)
    basis = [nstd + i for i in range(m)]

    zrow: list[Fraction] = []

    def pivot(r, c):
        pr = T[r]
        inv = 1 / pr[c]
        if inv != 1:
            T[r] = pr = [x * inv for x in pr]
        nz = [j for j, x in enumerate(pr) if x]
        for ti in T if not zrow else T + [zrow]:
            if ti is pr:
                continue
            f = ti[c]
            if f:
                for j in nz:
                    ti[j] -= f * pr[j]
        basis[r] = c

    def run(cost: list[Fraction], allowed: int) -> bool:
        """Minimize cost over columns < allowed; False iff unbounded."""
        # reduced-cost row, last entry holds -objective
        zrow[:] = list(cost[: len(T[0]) - 1]) + [Fraction(0)] if T else []
        for i, bv in enumerate(basis):
            f = zrow[bv]
            if f:
                for j, x in enumerate(T[i]):
                    if x:
                        zrow[j] -= f * x
        while True:
            enter = next((j for j in range(allowed) if zrow[j] < 0), -1)
            if enter < 0:
                return True
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    key = (T[i][-1] / a, basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            pivot(best[1], enter)

    phase1 = [Fraction(0)] * nstd + [Fraction(1)] * m
    if m:
        run(phase1, nstd + m)
    zrow.clear()
    infeas = sum((T[i][-1] for i in range(m) if basis[i] >= nstd), Fraction(0))
    if infeas > 0:
        # y_i = cB B^{-1}; artificial columns of the tableau hold B^{-1}
        cb = [phase1[bv] for bv in basis]
        y_std = [sum((cb[k] * T[k][nstd + i] for k in range(m) if cb[k]), Fraction(0)) for i in range(m)]
        y = [Fraction(0)] * len(A)
        for i in range(m):
            y[origin[i]] = sign[i] * y_std[i]
        if not verify_farkas(A, b, nonneg, ncols, y):
            raise LPError("internal error: Farkas certificate failed verification")
        return LPResult(farkas=y)

    # drive zero-level artificials out, dropping redundant rows
    i = 0
    while i < m:
        if basis[i] >= nstd:
            c = next((j for j in range(nstd) if T[i][j] != 0), None)
            if c is None:
                T.pop(i)
                basis.pop(i)
                m -= 1
                continue
            pivot(i, c)
        i += 1

    obj_val = None
    if objective is not None:
        # tableau rows keep their original width even after redundant rows go
        cost = [Fraction(0)] * (len(T[0]) if T else nstd + 1)
        for j, cj in objective.items():
            cost[j] = as_fraction(cj)
            if j in neg_col:
                cost[neg_col[j]] = -as_fraction(cj)
        if m and not run(cost, nstd):
            return LPResult(unbounded=True, point=_extract(T, basis, ncols, neg_col))
    x = _extract(T, basis, ncols, neg_col)
    if free:
        x = _purify(A, nonneg, ncols, x)
    if objective is not None:
        obj_val = sum((as_fraction(c) * x[j] for j, c in objective.items()), Fraction(0))
    if not verify_point(A, b, nonneg, x):
        raise LPError("internal error: simplex point failed verification")
    return LPResult(point=x, objective=obj_val)


def _purify(A, nonneg: set, ncols: int, x: list[Fraction]) -> list[Fraction]:
    """Move x to a vertex of the minimal face containing it.

    A basic solution of the split problem can leave a free variable at zero
    with both halves nonbasic, which is not a vertex of the original
    polyhedron. Stepping along the face keeps any linear objective constant,
    because that face lies inside the optimal face.
    """
    while True:
        active = [dict(row) for row in A if row] + [{j: 1} for j in sorted(nonneg) if x[j] == 0]
        ker = kernel_basis(active, ncols)
        if not ker:
            return x
        d = ker[0]
        for sgn in (1, -1):
            steps = [x[j] / (-sgn * a) for j, a in d.items() if j in nonneg and sgn * a < 0]
            if steps:
                t = sgn * min(steps)
                x = list(x)
                for j, a in d.items():
                    x[j] += t * a
                break
        else:
            return x  # the face contains a line: there is no vertex to move to


def _extract(T, basis, ncols, neg_col) -> list[Fraction]:
    val = {bv: T[i][-1] for i, bv in enumerate(basis)}
    x = [val.get(j, Fraction(0)) for j in range(ncols)]
    for j, jn in neg_col.items():
        x[j] -= val.get(jn, Fraction(0))
    return x


def lp_feasible(A: Sequence[Mapping[int, Number]], b: Sequence[Number], ncols: int,
                nonneg: Optional[Iterable[int]] = None) -> LPResult:
    return lp_solve(A, b, ncols, nonneg)
