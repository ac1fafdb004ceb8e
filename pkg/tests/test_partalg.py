import pytest

from kronbasis.exactlin import SparseRationalMatrix, subspace_equal
from kronbasis.partalg import (
    SetPartitionDiagram,
    bell,
    centralizer,
    commutation_check,
    diagram_action,
    diagram_span_dim,
    enumerate_diagrams,
    generator_diagrams,
    identity_diagram,
    orbit_commutant_basis,
    p1_diagram,
    place_permutation_diagram,
    schur_weyl_check,
    set_partitions,
)
from kronbasis.permcomb import Permutation, all_permutations
from kronbasis.tensorrep import kron_power, kron_vector


@pytest.mark.parametrize("m", range(0, 8))
def test_set_partitions_counted_by_bell(m):
    parts = set_partitions(m)
    assert len(parts) == bell(m) == len(set(parts))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_diagram_count(r):
    assert len(enumerate_diagrams(r)) == bell(2 * r)


def test_diagram_text_roundtrip():
    for d in enumerate_diagrams(2):
        assert SetPartitionDiagram.parse(d.to_text(), 2) == d
    assert identity_diagram(2).to_text() == "{1,1'}{2,2'}"


def test_bad_diagram():
    with pytest.raises(ValueError):
        SetPartitionDiagram(1, ((0,),))


@pytest.mark.parametrize("n,r", [(2, 1), (3, 2), (2, 3)])
def test_identity_and_p1_actions(n, r):
    N = n ** r
    assert diagram_action(identity_diagram(r), n) == SparseRationalMatrix.identity(N)
    # p1 acts as J (x) I (x) ... (x) I
    J = SparseRationalMatrix(n, n, {(i, j): 1 for i in range(n) for j in range(n)})
    expected = J
    for _ in range(r - 1):
        I = SparseRationalMatrix.identity(n)
        expected = SparseRationalMatrix(expected.nrows * n, expected.ncols * n,
                                        {(a * n + c, b * n + d): v * w
                                         for (a, b), v in expected.entries.items()
                                         for (c, d), w in I.entries.items()})
    assert diagram_action(p1_diagram(r), n) == expected


def test_place_permutation_swaps_tensor_factors():
    n = 3
    sw = diagram_action(place_permutation_diagram(2, (2, 1)), n)
    for i in range(n):
        for j in range(n):
            assert sw[(i * n + j, j * n + i)] == 1


@pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (3, 1), (2, 3)])
def test_diagrams_commute_with_kronecker_powers(n, r):
    assert commutation_check(n, r)


@pytest.mark.parametrize("n,r,dim", [(2, 2, 8), (3, 2, 14), (4, 2, 15), (2, 1, 2), (3, 3, 122)])
def test_commutant_dimension(n, r, dim):
    # orbits of S_n on pairs of r-tuples: set partitions of 2r labels into at most n blocks,
    # a sum of Stirling numbers of the second kind, e.g. S(6,1)+S(6,2)+S(6,3) = 1+31+90
    assert len(orbit_commutant_basis(n, r)) == dim
    assert diagram_span_dim(n, r) == dim


@pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (4, 2), (2, 3)])
def test_schur_weyl(n, r):
    rep = schur_weyl_check(n, r)
    assert rep["pass"]
    assert rep["dim_bicommutant"] == rep["span_rank"]


def test_schur_weyl_dimensions_4_2():
    rep = schur_weyl_check(4, 2)
    assert rep["dim_commutant"] == 15 and rep["span_rank"] == 23


def test_generator_centralizer_small():
    n, r = 3, 2
    gens = centralizer([diagram_action(d, n) for d in generator_diagrams(r)])
    gamma = [kron_vector(w, r) for w in all_permutations(n)]
    assert subspace_equal(gens, gamma, (n ** r) ** 2)
