import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import fractions, integers, lists

from bijection import tiling_from_triangulation
from errors import CyclicOrderError, FormatError
from farey import (FareyVertex, canonical, crossing_count, det, is_edge,
                   paths_from_tiling, ptolemy_check, tiling_entry_from_paths)
from frieze import growth
from oracle import random_triangulation
from tiling import Position

INF = FareyVertex(1, 0)


def v(x):
    x = Fraction(x)
    return FareyVertex(x.numerator, x.denominator)


@pytest.mark.parametrize('p, q', [(0, 0), (2, 4), (1, -2), (-1, 0)])
def test_non_canonical_vertex(p, q):
    with pytest.raises(FormatError):
        FareyVertex(p, q)


def test_canonical():
    assert canonical((2, -4)) == FareyVertex(-1, 2)
    assert canonical((-3, 0)) == INF
    assert str(INF) == 'inf'
    assert str(canonical((6, 4))) == '3/2'


def test_edges():
    assert is_edge(v('1/2'), v('2/3'))
    assert is_edge(INF, v(5))
    assert not is_edge(v(0), v('2/3'))


def test_fibonacci_paths(fibonacci):
    p_path, r_path, mono = paths_from_tiling(fibonacci, (0, 3), (0, 3))
    assert p_path[0] == (1, -1)
    assert p_path[1] == (1, -2)
    assert r_path[0] == (1, 0) and r_path[1] == (0, 1)
    assert mono.matrix == ((0, -1), (1, 3))
    assert mono.apply(p_path[0]) == p_path[1]
    assert mono.trace == growth(fibonacci)


def test_example_paths(example):
    p_path, r_path, mono = paths_from_tiling(example, (-2, 4), (-2, 4))
    assert r_path[2] == (-1, 3)
    assert r_path[3] == (-2, 5)
    assert mono.matrix == ((-1, -2), (3, 5))
    assert mono.trace == 4
    for i in p_path.indices:
        for j in r_path.indices:
            assert tiling_entry_from_paths(p_path, r_path, i, j) == example.entry(Position(i, j))


def test_path_index_bounds(fibonacci):
    p_path, _, _ = paths_from_tiling(fibonacci, (0, 2), (0, 2))
    assert list(p_path.indices) == [0, 1, 2]
    with pytest.raises(IndexError):
        p_path[3]


@settings(max_examples=40, deadline=None)
@given(integers(0, 100_000))
def test_paths_reproduce_random_tilings(k):
    tiling = tiling_from_triangulation(random_triangulation(random.Random(k)))
    p_path, r_path, mono = paths_from_tiling(tiling, (-3, 5), (-3, 5))
    assert mono.trace == growth(tiling)
    for i in p_path.indices:
        for j in r_path.indices:
            assert det(p_path[i], r_path[j]) == tiling.entry(Position(i, j))
    vertices = p_path.vertices()
    assert all(is_edge(a, b) for a, b in zip(vertices, vertices[1:]))


def test_ptolemy_example():
    assert ptolemy_check(v(0), v('1/2'), v(1), INF)
    assert det(v(0), v(1)) * det(v('1/2'), INF) == 2


def test_ptolemy_needs_cyclic_order():
    with pytest.raises(CyclicOrderError):
        ptolemy_check(v(0), v(1), v('1/2'), INF)
    with pytest.raises(CyclicOrderError):
        ptolemy_check(v(0), v(0), v(1), INF)


@given(lists(fractions(min_value=-20, max_value=20, max_denominator=30), min_size=4, max_size=4, unique=True),
       integers(0, 3))
def test_ptolemy_any_four(xs, rotation):
    vs = [v(x) for x in sorted(xs)]
    vs = vs[rotation:] + vs[:rotation]
    assert ptolemy_check(*vs)


def test_ptolemy_through_infinity():
    assert ptolemy_check(v(-3), v('1/3'), v('5/2'), INF)


@pytest.mark.parametrize('a, c, expected', [
    ('0', '1', 0),
    ('0', '2/3', 1),
    ('0', '1/2', 0),
    ('0', '3/5', 2),
    ('1/3', '1/2', 0),
    ('1/3', '2/3', 2),
])
def test_crossing_count(a, c, expected):
    assert crossing_count(v(a), v(c)) == expected
    assert crossing_count(v(c), v(a)) == expected


def test_crossing_count_with_infinity():
    assert crossing_count(INF, v('7/3')) == 2
    assert crossing_count(v(5), INF) == 0


@settings(max_examples=25, deadline=None)
@given(integers(0, 100_000))
def test_crossings_bounded_by_entries(k):
    tiling = tiling_from_triangulation(random_triangulation(random.Random(k)))
    p_path, r_path, _ = paths_from_tiling(tiling, (-2, 3), (-2, 3))
    for i in p_path.indices:
        for j in r_path.indices:
            a, c = canonical(p_path[i]), canonical(r_path[j])
            assert crossing_count(a, c) <= abs(det(a, c)) == tiling.entry(Position(i, j))


@given(fractions(min_value=-10, max_value=10, max_denominator=40),
       fractions(min_value=-10, max_value=10, max_denominator=40))
def test_crossing_count_symmetric_and_bounded(a, c):
    a, c = v(a), v(c)
    assert crossing_count(a, c) == crossing_count(c, a)
    assert crossing_count(a, c) <= abs(det(a, c))
