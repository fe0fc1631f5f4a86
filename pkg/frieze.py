"""
AnnulusTilings Frieze Module
Quiddity sequences, infinite frieze patterns, growth coefficients and monodromy
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Sequence, Tuple

import numpy as np

from config import INDEPENDENCE_PROBES, PROBE_RADIUS
from errors import (FormatError, IndexOutOfRangeError,
                    InternalInconsistencyError, NonPositiveFriezeError)
from tiling import PeriodicTiling, Position

logger = logging.getLogger(__name__)

SIDE_ROW = 'Row'
SIDE_COLUMN = 'Column'


@dataclass(frozen=True)
class QuidditySequence:
    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(int(v) for v in self.values))
        if not self.values:
            raise FormatError("quiddity sequence is empty")
        if any(v < 1 for v in self.values):
            raise FormatError(f"quiddity entries must be positive: {self.values}")

    @property
    def period(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        return self.values[k % self.period]


class InfiniteFriezePattern:
    """v_{k,l} for l >= k: v_{k,k} = 0, v_{k,k+1} = 1, v_{k,l+1} = a_l v_{k,l} - v_{k,l-1}.

    Entries are memoised per (k mod period, l - k).
    """

    def __init__(self, quiddity: QuidditySequence):
        self.quiddity = quiddity
        self._rows: Dict[int, List[int]] = {}

    @property
    def period(self) -> int:
        return self.quiddity.period

    def entry(self, k: int, l: int) -> int:
        if l < k:
            raise IndexOutOfRangeError(f"frieze entry v_({k},{l}) needs l >= k")
        row = self._rows.setdefault(k % self.period, [0, 1])
        base = k % self.period
        while len(row) <= l - k:
            d = len(row)
            # v_{k,k+d} = a_{k+d-1} v_{k,k+d-1} - v_{k,k+d-2}
            value = self.quiddity[base + d - 1] * row[d - 1] - row[d - 2]
            if value <= 0:
                raise NonPositiveFriezeError(
                    f"quiddity {self.quiddity.values} gives v_({base},{base + d}) = {value}")
            row.append(value)
        return row[l - k]

    def row(self, k: int, length: int) -> List[int]:
        """v_{k,k}, v_{k,k+1}, ..., length entries"""
        return [self.entry(k, k + d) for d in range(length)]

    def diagonal(self, d: int, k_min: int, k_max: int) -> List[int]:
        """The frieze row at distance d: v_{k,k+d} for k_min <= k <= k_max"""
        return [self.entry(k, k + d) for k in range(k_min, k_max + 1)]

    def diamond(self, k: int, l: int) -> int:
        return self.entry(k, l) * self.entry(k + 1, l + 1) - self.entry(k, l + 1) * self.entry(k + 1, l)


@dataclass(frozen=True)
class Monodromy:
    """2x2 integer matrix of determinant 1"""
    matrix: Tuple[Tuple[int, int], Tuple[int, int]]

    def __post_init__(self):
        if self.det != 1:
            raise InternalInconsistencyError(f"monodromy {self.matrix} has determinant {self.det}")

    @classmethod
    def from_array(cls, a: np.ndarray) -> 'Monodromy':
        return cls(((int(a[0, 0]), int(a[0, 1])), (int(a[1, 0]), int(a[1, 1]))))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    @property
    def trace(self) -> int:
        return self.matrix[0][0] + self.matrix[1][1]

    def to_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=object)

    def apply(self, v: Tuple[int, int]) -> Tuple[int, int]:
        (a, b), (c, d) = self.matrix
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def _probes(seed: int, count: int, radius: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(-radius, radius + 1, size=(count, 2))


def row_quiddity(t: PeriodicTiling) -> QuidditySequence:
    """a_i = (u_{i-1,j} + u_{i+1,j}) / u_{i,j}, checked for j-independence"""
    for i, j in _probes(1, INDEPENDENCE_PROBES, PROBE_RADIUS * max(t.m, t.n)):
        i, j = int(i), int(j)
        total = t.entry(Position(i - 1, j)) + t.entry(Position(i + 1, j))
        if total != t.a(i) * t.entry(Position(i, j)):
            raise InternalInconsistencyError(f"row quiddity at {i} depends on j={j}")
    return QuidditySequence(t.row_quiddity)


def col_quiddity(t: PeriodicTiling) -> QuidditySequence:
    for i, j in _probes(2, INDEPENDENCE_PROBES, PROBE_RADIUS * max(t.m, t.n)):
        i, j = int(i), int(j)
        total = t.entry(Position(i, j - 1)) + t.entry(Position(i, j + 1))
        if total != t.b(j) * t.entry(Position(i, j)):
            raise InternalInconsistencyError(f"column quiddity at {j} depends on i={i}")
    return QuidditySequence(t.col_quiddity)


def _frieze_minor(t: PeriodicTiling, side: str, k: int, l: int, anchor: int) -> int:
    u = t.entry
    if side == SIDE_ROW:
        return u(Position(k, anchor + 1)) * u(Position(l, anchor)) - \
            u(Position(k, anchor)) * u(Position(l, anchor + 1))
    if side == SIDE_COLUMN:
        return u(Position(anchor + 1, k)) * u(Position(anchor, l)) - \
            u(Position(anchor, k)) * u(Position(anchor + 1, l))
    raise ValueError(f"unknown side {side!r}")


def frieze_entry_from_tiling(t: PeriodicTiling, side: str, k: int, l: int,
                             anchors: Sequence[int] = (0, 1, -3)) -> int:
    """v_{k,l} as minus a 2x2 minor of rows k, l (Row) or columns k, l (Column).

    Evaluated at every anchor column (resp. row); they must agree.
    """
    if l < k:
        raise IndexOutOfRangeError(f"frieze entry v_({k},{l}) needs l >= k")
    values = {_frieze_minor(t, side, k, l, anchor) for anchor in anchors}
    if len(values) != 1:
        raise InternalInconsistencyError(f"v_({k},{l}) on the {side} side depends on the anchor: {values}")
    return values.pop()


def frieze_from_quiddity(q: QuidditySequence) -> InfiniteFriezePattern:
    """Positive infinite frieze of q, or NonPositiveFriezeError.

    Needs monodromy trace t >= 2. Along a row, v_{k,l+2p} = t v_{k,l+p} - v_{k,l},
    so once one period of the row dominates the period before it, every later
    period does too and the row stays positive.
    """
    trace = monodromy(q).trace
    if trace < 2:
        raise NonPositiveFriezeError(f"quiddity {q.values} has monodromy trace {trace}")
    pattern = InfiniteFriezePattern(q)
    p = q.period
    for k in range(p):
        start = 1
        while any(pattern.entry(k, k + d + p) < pattern.entry(k, k + d) for d in range(start, start + p)):
            start += p
    return pattern


def tiling_frieze(t: PeriodicTiling, side: str = SIDE_ROW) -> InfiniteFriezePattern:
    q = row_quiddity(t) if side == SIDE_ROW else col_quiddity(t)
    return frieze_from_quiddity(q)


def growth(t: PeriodicTiling) -> int:
    """(u_{i+m,j} + u_{i,j+n}) / u_{i,j}, checked at random positions"""
    values = set()
    for i, j in _probes(3, INDEPENDENCE_PROBES, PROBE_RADIUS * max(t.m, t.n)):
        p = Position(int(i), int(j))
        total = t.entry(p.shifted(t.m, 0)) + t.entry(p.shifted(0, t.n))
        q, r = divmod(total, t.entry(p))
        if r:
            raise InternalInconsistencyError(f"non-integral growth {total}/{t.entry(p)} at {p}")
        values.add(q)
    if len(values) != 1:
        raise InternalInconsistencyError(f"growth depends on position: {sorted(values)}")
    return values.pop()


def growth_from_frieze(f: InfiniteFriezePattern, n: int = None) -> int:
    """v_{i,i+n+1} - v_{i+1,i+n}, the same for every i"""
    n = f.period if n is None else n
    values = {f.entry(i, i + n + 1) - f.entry(i + 1, i + n) for i in range(f.period)}
    if len(values) != 1:
        raise InternalInconsistencyError(f"frieze growth depends on i: {sorted(values)}")
    return values.pop()


def monodromy(q: QuidditySequence) -> Monodromy:
    """Product of [[a_k, -1], [1, 0]] over one period, a_0 leftmost"""
    factors = [np.array([[a, -1], [1, 0]], dtype=object) for a in q.values]
    return Monodromy.from_array(reduce(np.dot, factors))
