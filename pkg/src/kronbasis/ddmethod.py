"""
Double description method for pointed polyhedral cones ``{x : A x >= 0}``.

Exact integer arithmetic: rays are primitive integer tuples and zero sets are
bitmasks over constraint indices. Adjacency is decided combinatorially.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .exactlin import Echelon, solve

log = logging.getLogger(__name__)


class DDBudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: list):
        super().__init__(message)
        self.partial = partial


@dataclass
class Ray:
    vec: tuple[int, ...]
    zeros: int  # bit k set iff constraint k is tight


def _primitive(vec: Sequence) -> tuple[int, ...]:
    den = 1
    for v in vec:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)


def _dot(row: dict, vec: Sequence[int]) -> int:
    return sum(a * vec[j] for j, a in row.items())


def extreme_rays(rows: Sequence[dict], dim: int, order: Optional[Sequence[int]] = None,
                 max_rays: Optional[int] = None) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{x in Q^dim : row . x >= 0 for all rows}``.

    ``order`` fixes the insertion order of constraints after the initial
    simplicial cone. Exceeding ``max_rays`` raises DDBudgetExceeded carrying
    the rays found so far.
    """
    m = len(rows)
    order = list(range(m)) if order is None else list(order)
    ech = Echelon(dim)
    initial = []
    for k in order:
        if ech.add(rows[k]):
            initial.append(k)
            if len(initial) == dim:
                break
    if len(initial) < dim:
        raise ValueError("cone is not pointed: constraint matrix lacks full column rank")

    basis_rows = [rows[k] for k in initial]
    rays: list[Ray] = []
    for t in range(dim):
        x = solve(basis_rows, [1 if s == t else 0 for s in range(dim)], dim)
        vec = _primitive([x.get(j, 0) for j in range(dim)])
        zeros = 0
        for s, k in enumerate(initial):
            if s != t:
                zeros |= 1 << k
        rays.append(Ray(vec, zeros))

    done = set(initial)
    for step, k in enumerate(order):
        if k in done:
            continue
        done.add(k)
        row = rows[k]
        pos, neg, zero = [], [], []
        for ray in rays:
            s = _dot(row, ray.vec)
            if s > 0:
                pos.append((ray, s))
            elif s < 0:
                neg.append((ray, s))
            else:
                zero.append(ray)
        if not neg:
            for ray in zero:
                ray.zeros |= 1 << k
            continue
        masks = [ray.zeros for ray in rays]
        new = []
        bit = 1 << k
        for p, sp in pos:
            for q, sq in neg:
                common = p.zeros & q.zeros
                if common.bit_count() < dim - 2:
                    continue
                adjacent = True
                for z in masks:
                    if z & common == common and z != p.zeros and z != q.zeros:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vec = _primitive([sp * b - sq * a for a, b in zip(p.vec, q.vec)])
                new.append(Ray(vec, common | bit))
        for ray in zero:
            ray.zeros |= bit
        rays = [p for p, _ in pos] + zero + new
        log.debug("constraint %d (%d/%d): %d rays", k, len(done), m, len(rays))
        if max_rays is not None and len(rays) > max_rays:
            raise DDBudgetExceeded(f"{len(rays)} intermediate rays exceed {max_rays}",
                                   [r.vec for r in rays])
    return sorted(r.vec for r in rays)
