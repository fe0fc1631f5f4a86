import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis.strategies import fractions

from config import FAREY_ORACLE_MAX_DENOMINATOR
from errors import PreconditionViolatedError
from farey import FareyVertex, crossing_count
from oracle import (NON_INTEGRAL, NON_POSITIVE, BruteFailure, FuzzScanner,
                    TrialOutcome, brute_crossing_count, brute_extend,
                    exhaustive_bijection_check, falsify_bad_periods,
                    fuzz_seeds, random_seed, seed_trial, tiling_periods)
from tiling import LatticePath, PeriodicTiling, Position, Window


def vertex(x: Fraction) -> FareyVertex:
    return FareyVertex(x.numerator, x.denominator)


def farey_sequence(order):
    return sorted({Fraction(p, q) for q in range(1, order + 1) for p in range(q + 1)})


def test_brute_extend_matches_engine(fibonacci_path, base_path):
    for path in (fibonacci_path, base_path):
        filled = brute_extend(path, radius=2)
        assert isinstance(filled, Window)
        expected = PeriodicTiling(path).window(filled.i_min, filled.i_max, filled.j_min, filled.j_max)
        assert filled.entries == expected.entries


def test_brute_extend_fails_on_bad_seed():
    failure = brute_extend(LatticePath(1, 1, Position(0, 0), 'RU', (2, 3, 2)))
    assert isinstance(failure, BruteFailure)
    assert failure.kind in (NON_INTEGRAL, NON_POSITIVE)


def test_brute_extend_radius():
    with pytest.raises(ValueError):
        brute_extend(LatticePath(1, 1, Position(0, 0), 'RU', (1, 1, 1)), radius=0)


def test_brute_crossing_small_cases():
    assert brute_crossing_count(vertex(Fraction(0)), vertex(Fraction(2, 3))) == 1
    assert brute_crossing_count(vertex(Fraction(0)), vertex(Fraction(1, 2))) == 0
    with pytest.raises(ValueError):
        brute_crossing_count(vertex(Fraction(0)), vertex(Fraction(3, 2)))


def test_crossing_count_exhaustive_small_denominators():
    for a, c in combinations(farey_sequence(8), 2):
        assert crossing_count(vertex(a), vertex(c)) == brute_crossing_count(vertex(a), vertex(c))


@settings(max_examples=200, deadline=None)
@given(fractions(0, 1, max_denominator=FAREY_ORACLE_MAX_DENOMINATOR),
       fractions(0, 1, max_denominator=FAREY_ORACLE_MAX_DENOMINATOR))
def test_crossing_count_sampled(a, c):
    assert crossing_count(vertex(a), vertex(c)) == brute_crossing_count(vertex(a), vertex(c))


@pytest.mark.parametrize('m, n', list(product(range(1, 4), repeat=2)))
def test_exhaustive_bijection(m, n):
    report = exhaustive_bijection_check(m, n, (-2, 2), ear_depth=1)
    assert report.passed, report.to_dict()
    assert report.triangulations > 0
    assert len(report.quiddities) == report.triangulations


def test_exhaustive_counts_bridging_only():
    report = exhaustive_bijection_check(1, 1, (0, 0))
    assert (report.triangulations, report.passed) == (2, True)
    assert sorted(report.quiddities) == [((3,), (3,)), ((3,), (3,))]


@pytest.mark.parametrize('args', [
    (5, 1, (0, 0), 0),
    (2, 2, (-5, 5), 0),
    (2, 2, (0, 0), 3),
])
def test_exhaustive_limits(args):
    with pytest.raises(PreconditionViolatedError):
        exhaustive_bijection_check(*args)


def test_random_seed_is_closed():
    rng = random.Random(7)
    for _ in range(20):
        path = random_seed(rng)
        assert path.values[0] == path.values[-1]
        assert 1 <= path.m <= 3 and 1 <= path.n <= 3


def test_seed_trial_is_deterministic():
    a = seed_trial(3, random.Random(11))
    b = seed_trial(3, random.Random(11))
    assert a == b


def test_fuzz_seeds():
    report = fuzz_seeds(1000, seed=2024, workers=4)
    assert len(report.outcomes) == 1000
    assert [o.trial for o in report.outcomes] == list(range(1000))
    assert report.passed, report.to_dict()['violations'][:5]
    stats = report.get_scan_statistics()
    assert stats['trials'] == 1000 and stats['violations'] == 0


def test_falsify_bad_periods():
    report = falsify_bad_periods(40, bound=4, seed=5, workers=4)
    assert report.passed, report.to_dict()['violations']


def test_tiling_periods(fibonacci, example):
    assert tiling_periods(fibonacci, 4) == [(1, 1), (2, 2), (3, 3), (4, 4)]
    assert tiling_periods(example, 4) == [(3, 2)]


def test_scanner_reports_violations():
    progress = []

    def trial(k, rng):
        return TrialOutcome(k, 1, 1 + k % 2, k != 3)

    report = FuzzScanner(seed=1, workers=2).scan('toy', 6, trial, lambda done, total: progress.append(done))
    assert [o.trial for o in report.violations] == [3]
    assert not report.passed
    assert sorted(progress) == list(range(1, 7))
    stats = report.get_scan_statistics()
    assert stats['by_period']['1,2'] == {'trials': 3, 'passed': 2}
    assert report.to_dict()['scan'] == 'toy'
