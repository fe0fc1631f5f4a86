import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from annulus import Bridging, MarkedAnnulus, PeripheralP, Triangulation  # noqa: E402
from bijection import tiling_from_triangulation  # noqa: E402
from tiling import LatticePath, PeriodicTiling, Position  # noqa: E402


def fib(k):
    """Every other Fibonacci number, both ways: f(0) = f(1) = 1, f(-k) = f(k + 1)"""
    if k < 0:
        return fib(1 - k)
    a, b = 1, 1
    for _ in range(k):
        a, b = b, 3 * b - a
    return a


@pytest.fixture
def fibonacci_path():
    return LatticePath(1, 1, Position(0, 0), 'RU', (1, 1, 1))


@pytest.fixture
def fibonacci(fibonacci_path):
    return PeriodicTiling(fibonacci_path)


@pytest.fixture
def fibonacci_triangulation():
    return Triangulation(MarkedAnnulus(1, 1), (Bridging(0, 0), Bridging(0, 1)))


@pytest.fixture
def example_triangulation():
    """A(3,2): three bridging arcs at P_0 and two nested P-peripheral arcs"""
    return Triangulation(MarkedAnnulus(3, 2), (
        Bridging(0, -1), Bridging(0, 0), Bridging(0, 1),
        PeripheralP(0, 2), PeripheralP(0, 3)))


@pytest.fixture
def example(example_triangulation):
    return tiling_from_triangulation(example_triangulation)


@pytest.fixture
def base_path():
    """All-ones staircase of the A(1,2) core left after peeling the example"""
    return LatticePath(1, 2, Position(0, -1), 'RRU', (1, 1, 1, 1))
