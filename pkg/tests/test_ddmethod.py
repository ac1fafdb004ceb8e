import itertools
from fractions import Fraction

import pytest

from kronbasis.ddmethod import DDBudgetExceeded, extreme_rays


def test_orthant():
    rows = [{0: 1}, {1: 1}, {2: 1}]
    assert extreme_rays(rows, 3) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_cone_over_square():
    # x0 >= |x1|, x0 >= |x2|  : four extreme rays
    rows = [{0: 1, 1: 1}, {0: 1, 1: -1}, {0: 1, 2: 1}, {0: 1, 2: -1}]
    assert sorted(extreme_rays(rows, 3)) == [(1, -1, -1), (1, -1, 1), (1, 1, -1), (1, 1, 1)]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_cone_over_cube_and_cross_polytope(k):
    # cube [-1,1]^k homogenized: 2k facets, 2^k vertices
    rows = []
    for i in range(1, k + 1):
        rows += [{0: 1, i: 1}, {0: 1, i: -1}]
    assert len(extreme_rays(rows, k + 1)) == 2 ** k
    # cross-polytope: 2^k facets, 2k vertices
    rows = [{0: 1, **{i + 1: s for i, s in enumerate(signs)}}
            for signs in itertools.product((1, -1), repeat=k)]
    assert len(extreme_rays(rows, k + 1)) == 2 * k


def test_insertion_order_does_not_matter():
    rows = [{0: 1, 1: 1}, {0: 1, 1: -1}, {0: 1, 2: 1}, {0: 1, 2: -1}, {0: 2, 1: 1, 2: 1}]
    base = extreme_rays(rows, 3)
    for order in itertools.permutations(range(5)):
        assert extreme_rays(rows, 3, order=order) == base


def test_fraction_rows_give_primitive_rays():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: 1, 1: -1}, {2: 1}]
    for ray in extreme_rays(rows, 3):
        assert all(isinstance(x, int) for x in ray)


def test_not_pointed():
    with pytest.raises(ValueError):
        extreme_rays([{0: 1}], 2)


def test_budget():
    rows = [{0: 1, **{i + 1: s for i, s in enumerate(signs)}}
            for signs in itertools.product((1, -1), repeat=4)]
    with pytest.raises(DDBudgetExceeded) as info:
        extreme_rays(rows, 5, max_rays=3)
    assert info.value.partial
