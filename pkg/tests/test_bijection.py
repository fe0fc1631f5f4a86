import random

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from annulus import (Bridging, EarRecord, MarkedAnnulus, Triangulation,
                     enumerate_triangulations, fan_triangulation)
from bijection import (AXIS_ROW, KIND_CORNER, KIND_STRAIGHT, NoPeripheral,
                       ReductionRecord, arc_value, check_seed, extend_seed,
                       find_unit_staircase, insert_line, peel_ears, reduce,
                       reduction_chain, tiling_from_triangulation,
                       triangulation_from_tiling)
from config import BOUNDARY_P
from conftest import fib
from errors import PreconditionViolatedError
from frieze import growth
from oracle import random_triangulation
from tiling import LatticePath, PeriodicTiling, Position, verify_window


def seed(values, steps='RU', m=1, n=1, start=Position(0, 0)):
    return LatticePath(m, n, start, steps, tuple(values))


def test_all_ones_seed_has_two_corners():
    report = check_seed(seed([1, 1, 1]))
    assert report.passed
    assert [(c.kind, c.numerator // c.denominator) for c in report.conditions] == \
        [(KIND_CORNER, 2), (KIND_CORNER, 2)]


def test_failing_seed_reports_point():
    report = check_seed(seed([2, 3, 2]))
    assert not report.passed
    bad = report.first_failure
    assert (bad.point_index, bad.numerator, bad.denominator) == (1, 5, 3)
    assert report.to_dict()['conditions'][1]['numerator'] == '5'


def test_wrap_point_condition():
    report = check_seed(seed([1, 2, 1]))
    assert report.passed
    assert [(c.point_index, c.numerator, c.denominator) for c in report.conditions] == [(0, 5, 1), (1, 2, 2)]


def test_straight_and_corner_points(base_path):
    kinds = [c.kind for c in check_seed(base_path).conditions]
    assert kinds == [KIND_CORNER, KIND_STRAIGHT, KIND_CORNER]


def test_extend_rejects_bad_seed():
    with pytest.raises(PreconditionViolatedError) as info:
        extend_seed(seed([2, 3, 2]))
    assert info.value.report.first_failure.point_index == 1
    assert info.value.to_dict()['report']['passed'] is False


def test_extend_shifted_fibonacci():
    t = extend_seed(seed([1, 2, 1]))
    assert all(t.entry(Position(0, j)) == fib(j + 1) for j in range(-5, 6))
    assert growth(t) == 3


def test_fibonacci_from_triangulation(fibonacci_triangulation, fibonacci):
    assert tiling_from_triangulation(fibonacci_triangulation) == fibonacci
    assert tiling_from_triangulation(fan_triangulation(1, 1)) == extend_seed(seed([1, 2, 1]))


def test_fan_has_all_ones_seed():
    t = tiling_from_triangulation(fan_triangulation(3, 2))
    assert t.seed.values == (1,) * 6


def test_peel_ears(example_triangulation):
    core, records = peel_ears(example_triangulation)
    assert records == [EarRecord(BOUNDARY_P, 1, 1), EarRecord(BOUNDARY_P, 1, 0)]
    assert core == Triangulation(MarkedAnnulus(1, 2), (Bridging(0, -1), Bridging(0, 0), Bridging(0, 1)))


def test_example_quiddities(example):
    assert (example.m, example.n) == (3, 2)
    assert example.row_quiddity == (7, 1, 2)
    assert example.col_quiddity == (2, 3)
    assert growth(example) == 4


def test_reduce_example(example):
    smaller, record = reduce(example)
    assert record == ReductionRecord(AXIS_ROW, 1, (4, 3))
    assert record.boundary == BOUNDARY_P
    assert (smaller.m, smaller.n) == (2, 2)
    assert smaller.row_quiddity == (6, 1)
    assert insert_line(smaller, record) == example


def test_reduction_chain(example, base_path):
    chain = reduction_chain(example)
    assert len(chain) == 2
    last = chain[-1][0]
    assert (last.m, last.n, last.row_quiddity) == (1, 2, (4,))
    assert last == PeriodicTiling(base_path)
    assert find_unit_staircase(last) == base_path


def test_no_peripheral(fibonacci, fibonacci_path):
    assert isinstance(reduce(fibonacci), NoPeripheral)
    assert reduction_chain(fibonacci) == []
    assert find_unit_staircase(fibonacci) == fibonacci_path


def test_staircase_search_skips_quiddity_one(example):
    assert find_unit_staircase(example) is None


def test_example_round_trip(example, example_triangulation):
    assert triangulation_from_tiling(example) == example_triangulation


def test_arcs_have_value_one(example, example_triangulation):
    assert [arc_value(example, a) for a in example_triangulation.arcs] == [1] * 5


@pytest.mark.parametrize('m, n', [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_round_trip_enumerated(m, n):
    for tri in enumerate_triangulations(m, n, -1, 1, ear_depth=1):
        tiling = tiling_from_triangulation(tri)
        assert triangulation_from_tiling(tiling) == tri


@settings(max_examples=60, deadline=None)
@given(integers(0, 100_000))
def test_random_triangulation_is_unitary(k):
    tri = random_triangulation(random.Random(k))
    tiling = tiling_from_triangulation(tri)
    assert all(arc_value(tiling, a) == 1 for a in tri.arcs)
    assert verify_window(tiling.window(-2, 2 * tri.m, -2, 2 * tri.n), tri.m, tri.n).passed
    assert triangulation_from_tiling(tiling) == tri
