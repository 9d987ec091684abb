import numpy as np
import pytest

from concat_blocking.code import degeneracy_flags, weight_distribution
from concat_blocking.construct import (Fixture, evaluation_points, fixture, grs, mds_outer,
                                       search_shortest_minimal, simplex)
from concat_blocking.errors import BadParams, LengthTooLong, NotFound, TooLarge
from concat_blocking.geometry import is_strong_blocking, system_from_code
from concat_blocking.gf import field_of_order, find_field
from concat_blocking.minimal import Verdict, is_minimal_code, outer_ab

GF2, GF3, GF4, GF9 = find_field(2), find_field(3), find_field(2, 2), find_field(3, 2)


@pytest.mark.parametrize("q,k,n", [(2, 2, 3), (2, 3, 7), (3, 2, 4), (4, 2, 5), (2, 4, 15)])
def test_simplex_parameters(q, k, n):
    c = simplex(field_of_order(q), k)
    wd = weight_distribution(c)
    assert (c.n, c.k) == (n, k)
    assert set(wd.counts) == {0, q ** (k - 1)}
    assert degeneracy_flags(c) == (True, True)
    assert is_minimal_code(c).verdict is Verdict.MINIMAL


def test_simplex_column_order():
    assert simplex(GF2, 2).gen.T.tolist() == [[0, 1], [1, 0], [1, 1]]


def test_evaluation_point_order():
    assert evaluation_points(GF4, 4) == [0, 1, 2, 3]
    F8 = find_field(2, 3)
    assert evaluation_points(F8, 4) == [0, 1, 2, 4]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_grs_is_mds(q):
    F = field_of_order(q)
    for N in range(1, q + 2):
        for K in range(1, N + 1):
            if F.q**K > 1 << 14:
                continue
            c = grs(F, N, K)
            assert weight_distribution(c).d == N - K + 1 == c.known_distance


def test_grs_examples_and_errors():
    assert weight_distribution(grs(GF4, 5, 3)).d == 3
    assert weight_distribution(grs(GF9, 4, 2)).d == 3
    assert weight_distribution(grs(GF4, 3, 3)).d == 1
    with pytest.raises(LengthTooLong):
        grs(GF4, 6, 2)
    with pytest.raises(BadParams):
        grs(GF4, 3, 4)


@pytest.mark.parametrize("field,q,K,N,D", [(GF4, 2, 3, 5, 3), (GF9, 3, 3, 7, 5),
                                           (GF4, 2, 2, 3, 2), (find_field(2, 3), 2, 5, 9, 5)])
def test_mds_outer(field, q, K, N, D):
    c = mds_outer(field, q, K)
    wd = weight_distribution(c)
    assert (c.n, wd.d) == (N, D)
    assert D * q > N * (q - 1)
    assert outer_ab(c, q).positive


def test_mds_outer_limits():
    with pytest.raises(BadParams):
        mds_outer(GF4, 2, 3 + 1)
    with pytest.raises(BadParams):
        mds_outer(GF4, 3, 2)


def test_fixtures():
    t = fixture(Fixture.PAPER_TERNARY_935)
    assert t.gen.tolist() == [[1, 0, 0, 1, 2, 0, 0, 2, 2],
                              [0, 1, 0, 0, 0, 1, 2, 1, 2],
                              [0, 0, 1, 1, 1, 1, 1, 1, 1]]
    b = fixture("PaperBinary1566")
    assert (b.n, b.k, weight_distribution(b).d) == (15, 6, 6)
    a = fixture("AlfaranoOuter", GF4, 1, 2)
    assert (a.n, a.k, weight_distribution(a).d) == (4, 2, 3)
    with pytest.raises(BadParams):
        fixture("AlfaranoOuter", GF4, 2, 1)
    with pytest.raises(BadParams):
        fixture("AlfaranoOuter")


@pytest.mark.parametrize("i,j", [(1, 2), (1, 3), (2, 5), (3, 7)])
def test_alfarano_outer_is_mds_over_gf8(i, j):
    c = fixture("AlfaranoOuter", find_field(2, 3), i, j)
    assert weight_distribution(c).d == 3


@pytest.mark.parametrize("q,k,n_max,expected", [(2, 2, 4, 3), (2, 3, 8, 6), (3, 3, 9, 9),
                                                (2, 4, 10, 9)])
def test_search(q, k, n_max, expected):
    n, witness = search_shortest_minimal(q, k, n_max)
    assert n == expected
    assert n >= (q + 1) * (k - 1)
    assert is_minimal_code(witness).verdict is Verdict.MINIMAL
    assert is_strong_blocking(system_from_code(witness)).positive
    assert degeneracy_flags(witness) == (True, True)


def test_search_errors():
    with pytest.raises(NotFound):
        search_shortest_minimal(2, 3, 5)
    with pytest.raises(TooLarge):
        search_shortest_minimal(2, 5, 13)
    with pytest.raises(TooLarge):
        search_shortest_minimal(5, 2, 6)


def test_search_is_deterministic():
    a = search_shortest_minimal(2, 3, 8)[1]
    b = search_shortest_minimal(2, 3, 8)[1]
    assert np.array_equal(a.gen, b.gen)
