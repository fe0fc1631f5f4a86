"""
AnnulusTilings Tiling Core Module
Periodic SL2-tiling engine: seeds, entries, windows and verification
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import STEP_RIGHT, STEP_UP
from errors import (FormatError, InternalInconsistencyError,
                    InvalidPeriodError, WindowTooSmallError)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Position:
    """Index (i, j) of u_{i,j}; rows are numbered bottom to top"""
    i: int
    j: int

    def shifted(self, di: int, dj: int) -> 'Position':
        return Position(self.i + di, self.j + dj)


def check_periods(m: int, n: int):
    """Reject periods with mn <= 0: no positive integral tiling has them"""
    if m <= 0 or n <= 0:
        raise InvalidPeriodError(
            f"periods must be positive, got (m, n) = ({m}, {n})")


@dataclass(frozen=True)
class LatticePath:
    """Monotone staircase from start to start + (m, n) with positive values"""
    m: int
    n: int
    start: Position
    steps: str
    values: Tuple[int, ...]

    def __post_init__(self):
        check_periods(self.m, self.n)
        object.__setattr__(self, 'values', tuple(int(v) for v in self.values))
        if len(self.steps) != self.m + self.n:
            raise FormatError(f"path needs {self.m + self.n} steps, got {len(self.steps)}")
        if self.steps.count(STEP_UP) != self.m or self.steps.count(STEP_RIGHT) != self.n:
            raise FormatError(
                f"path {self.steps!r} must contain {self.m} '{STEP_UP}' and {self.n} '{STEP_RIGHT}'")
        if len(self.values) != self.m + self.n + 1:
            raise FormatError(f"path needs {self.m + self.n + 1} values, got {len(self.values)}")
        if self.values[0] != self.values[-1]:
            raise FormatError("first and last values must agree (periodic closure)")
        if any(v <= 0 for v in self.values):
            raise FormatError("path values must be positive")

    @property
    def length(self) -> int:
        return self.m + self.n

    @classmethod
    def fan(cls, m: int, n: int, values: Optional[Sequence[int]] = None,
            start: Position = Position(0, 0)) -> 'LatticePath':
        """Staircase U^m R^n; all ones unless values are given"""
        if values is None:
            values = [1] * (m + n + 1)
        return cls(m, n, start, STEP_UP * m + STEP_RIGHT * n, tuple(values))

    def point(self, k: int) -> Position:
        """k-th point of the periodically extended path (any integer k)"""
        turns, r = divmod(k, self.length)
        i, j = self.start.i + turns * self.m, self.start.j + turns * self.n
        for step in self.steps[:r]:
            if step == STEP_UP:
                i += 1
            else:
                j += 1
        return Position(i, j)

    def value(self, k: int) -> int:
        return self.values[k % self.length]

    def points(self) -> List[Position]:
        """The m + n + 1 points from start to start + (m, n)"""
        return [self.point(k) for k in range(self.length + 1)]


class StaircaseEngine:
    """Fills the rectangle spanned by two periods of a seed staircase.

    The staircase runs from start - (m, n) to start + (m, n). Cells above-left
    of it are filled bottom-up, right to left; cells below-right top-down,
    left to right. Every step solves one adjacent minor for a single unknown.
    """

    def __init__(self, path: LatticePath):
        self.path = path
        self.m, self.n = path.m, path.n
        self.i_lo, self.i_hi = path.start.i - self.m, path.start.i + self.m
        self.j_lo, self.j_hi = path.start.j - self.n, path.start.j + self.n
        self.values: Dict[Tuple[int, int], int] = {}

    def run(self) -> Dict[Tuple[int, int], int]:
        path = self.path
        for k in range(-path.length, path.length + 1):
            p = path.point(k)
            self.values[(p.i, p.j)] = path.value(k)

        # column extent of the staircase in every row
        row_span: Dict[int, Tuple[int, int]] = {}
        for (i, j) in self.values:
            lo, hi = row_span.get(i, (j, j))
            row_span[i] = (min(lo, j), max(hi, j))

        for i in range(self.i_lo, self.i_hi + 1):
            left, _ = row_span[i]
            for j in range(left - 1, self.j_lo - 1, -1):
                # u_{i,j} u_{i-1,j+1} - u_{i-1,j} u_{i,j+1} = 1
                self._solve((i, j), self.values[(i - 1, j)] * self.values[(i, j + 1)] + 1,
                            self.values[(i - 1, j + 1)])

        for i in range(self.i_hi, self.i_lo - 1, -1):
            _, right = row_span[i]
            for j in range(right + 1, self.j_hi + 1):
                # u_{i+1,j-1} u_{i,j} - u_{i,j-1} u_{i+1,j} = 1
                self._solve((i, j), self.values[(i, j - 1)] * self.values[(i + 1, j)] + 1,
                            self.values[(i + 1, j - 1)])

        logger.debug("propagated %d entries for (%d, %d)-seed at %s",
                     len(self.values), self.m, self.n, path.start)
        return self.values

    def _solve(self, cell: Tuple[int, int], numerator: int, denominator: int):
        q, r = divmod(numerator, denominator)
        if r:
            raise InternalInconsistencyError(
                f"non-integral entry {numerator}/{denominator} at {cell}")
        if q <= 0:
            raise InternalInconsistencyError(f"non-positive entry {q} at {cell}")
        self.values[cell] = q


class PeriodicTiling:
    """Positive integral (m, n)-periodic SL2-tiling.

    Adjacent minors follow u_{i+1,j} u_{i,j+1} - u_{i,j} u_{i+1,j+1} = 1 with
    row i+1 drawn above row i. The stored seed is the canonical fan staircase
    U^m R^n from (0, 0); any other seed is converted on construction.
    """

    def __init__(self, seed: LatticePath):
        self.m, self.n = seed.m, seed.n
        engine = StaircaseEngine(seed)
        self._rect = engine.run()
        self._origin = seed.start
        self._bounds = (engine.i_lo, engine.i_hi, engine.j_lo, engine.j_hi)
        self.row_quiddity = self._extract_quiddity(axis='row')
        self.col_quiddity = self._extract_quiddity(axis='col')
        self._cache: Dict[Tuple[int, int], int] = dict(self._rect)

        if seed.start == Position(0, 0) and seed.steps == STEP_UP * self.m + STEP_RIGHT * self.n:
            self.seed = seed
        else:
            fan = LatticePath.fan(self.m, self.n)
            self.seed = LatticePath.fan(
                self.m, self.n, [self.entry(p) for p in fan.points()])

    @classmethod
    def from_entries(cls, m: int, n: int, lookup) -> 'PeriodicTiling':
        """Build from any callable (i, j) -> u_{i,j} by reading the fan seed"""
        check_periods(m, n)
        fan = LatticePath.fan(m, n)
        return cls(LatticePath.fan(m, n, [lookup(p.i, p.j) for p in fan.points()]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicTiling):
            return NotImplemented
        return (self.m, self.n, self.seed.values) == (other.m, other.n, other.seed.values)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.seed.values))

    def __repr__(self) -> str:
        return (f"PeriodicTiling(m={self.m}, n={self.n}, "
                f"a={self.row_quiddity}, b={self.col_quiddity})")

    def _extract_quiddity(self, axis: str) -> Tuple[int, ...]:
        i0, j0 = self._origin.i, self._origin.j
        period = self.m if axis == 'row' else self.n
        found: Dict[int, int] = {}
        for k in range(-period + 1, period):
            if axis == 'row':
                lo, mid, hi = (i0 + k - 1, j0), (i0 + k, j0), (i0 + k + 1, j0)
            else:
                lo, mid, hi = (i0, j0 + k - 1), (i0, j0 + k), (i0, j0 + k + 1)
            total = self._rect[lo] + self._rect[hi]
            q, r = divmod(total, self._rect[mid])
            if r:
                raise InternalInconsistencyError(
                    f"non-integral {axis} quiddity {total}/{self._rect[mid]} at {mid}")
            index = (mid[0] if axis == 'row' else mid[1]) % period
            if found.setdefault(index, q) != q:
                raise InternalInconsistencyError(f"{axis} quiddity is not periodic at {mid}")
        return tuple(found[k] for k in range(period))

    def a(self, i: int) -> int:
        return self.row_quiddity[i % self.m]

    def b(self, j: int) -> int:
        return self.col_quiddity[j % self.n]

    def entry(self, p: Position) -> int:
        """u_{i,j} anywhere on Z^2 (cached)"""
        key = (p.i, p.j)
        if key not in self._cache:
            self._cache[key] = self.entry_via(p, order='columns')
        return self._cache[key]

    def entry_via(self, p: Position, order: str = 'columns') -> int:
        """u_{i,j} by translating into the base rectangle and walking one recurrence.

        order='columns' reduces i into one period and walks along the row with
        the column quiddity; order='rows' reduces j and walks along the column
        with the row quiddity. Both must agree on a valid tiling.
        """
        i_lo, i_hi, j_lo, j_hi = self._bounds
        i0, j0 = self._origin.i, self._origin.j
        if order == 'columns':
            k = (p.i - i0) // self.m
            i, j = p.i - k * self.m, p.j - k * self.n
            value = self._walk(j, j_lo, j_hi, lambda c: (i, c), self.b)
        elif order == 'rows':
            k = (p.j - j0) // self.n
            i, j = p.i - k * self.m, p.j - k * self.n
            value = self._walk(i, i_lo, i_hi, lambda r: (r, j), self.a)
        else:
            raise ValueError(f"unknown order {order!r}")
        if value <= 0:
            raise InternalInconsistencyError(f"non-positive entry {value} at {p}")
        return value

    def _walk(self, target: int, lo: int, hi: int, cell, coefficient) -> int:
        if lo <= target <= hi:
            return self._rect[cell(target)]
        if target > hi:
            prev, cur = self._rect[cell(hi - 1)], self._rect[cell(hi)]
            for c in range(hi, target):
                prev, cur = cur, coefficient(c) * cur - prev
            return cur
        nxt, cur = self._rect[cell(lo + 1)], self._rect[cell(lo)]
        for c in range(lo, target, -1):
            nxt, cur = cur, coefficient(c) * cur - nxt
        return cur

    def window(self, i_min: int, i_max: int, j_min: int, j_max: int) -> 'Window':
        if i_min > i_max or j_min > j_max:
            raise ValueError(f"empty window bounds ({i_min}, {i_max}, {j_min}, {j_max})")
        entries = [[self.entry(Position(i, j)) for j in range(j_min, j_max + 1)]
                   for i in range(i_min, i_max + 1)]
        return Window(i_min, i_max, j_min, j_max, entries, m=self.m, n=self.n)


@dataclass
class Window:
    """Dense rectangle of entries; entries[r][c] = u_{i_min + r, j_min + c}"""
    i_min: int
    i_max: int
    j_min: int
    j_max: int
    entries: List[List[int]]
    m: Optional[int] = None
    n: Optional[int] = None

    def __post_init__(self):
        rows, cols = self.i_max - self.i_min + 1, self.j_max - self.j_min + 1
        if rows < 1 or cols < 1:
            raise FormatError("window bounds are empty")
        if len(self.entries) != rows or any(len(r) != cols for r in self.entries):
            raise FormatError(f"window entries do not match a {rows}x{cols} rectangle")
        self.entries = [[int(v) for v in row] for row in self.entries]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def value(self, i: int, j: int) -> int:
        return self.entries[i - self.i_min][j - self.j_min]

    def rows_top_down(self) -> List[List[int]]:
        return [list(r) for r in reversed(self.entries)]

    def to_array(self) -> np.ndarray:
        """Object-dtype array in matrix layout (row 0 is i_min)"""
        return np.array(self.entries, dtype=object)

    def to_frame(self) -> pd.DataFrame:
        """Display layout: highest row first, labelled by i and j"""
        return pd.DataFrame(self.rows_top_down(),
                            index=list(range(self.i_max, self.i_min - 1, -1)),
                            columns=list(range(self.j_min, self.j_max + 1)))


@dataclass
class ConditionResult:
    name: str
    status: str  # 'pass', 'fail' or 'skipped'
    checked: int = 0
    first_failure: Optional[Position] = None

    @property
    def passed(self) -> bool:
        return self.status != 'fail'

    def to_dict(self) -> Dict:
        failure = None if self.first_failure is None else [self.first_failure.i, self.first_failure.j]
        return {'condition': self.name, 'status': self.status,
                'checked': self.checked, 'first_failure': failure}


@dataclass
class VerificationReport:
    conditions: List[ConditionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def __getitem__(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> Dict:
        return {'passed': self.passed, 'conditions': [c.to_dict() for c in self.conditions]}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([c.to_dict() for c in self.conditions])


def _condition(name: str, ok: Optional[np.ndarray], i_min: int, j_min: int) -> ConditionResult:
    if ok is None or ok.size == 0:
        return ConditionResult(name, 'skipped')
    bad = np.argwhere(~ok)
    if len(bad) == 0:
        return ConditionResult(name, 'pass', int(ok.size))
    r, c = bad[0]
    return ConditionResult(name, 'fail', int(ok.size), Position(i_min + int(r), j_min + int(c)))


def adjacent_minors(a: np.ndarray) -> np.ndarray:
    """u_{i+1,j} u_{i,j+1} - u_{i,j} u_{i+1,j+1} for every adjacent block"""
    return a[1:, :-1] * a[:-1, 1:] - a[:-1, :-1] * a[1:, 1:]


def adjacent_determinants3(a: np.ndarray) -> np.ndarray:
    p, q, r = a[:-2, :-2], a[:-2, 1:-1], a[:-2, 2:]
    s, t, u = a[1:-1, :-2], a[1:-1, 1:-1], a[1:-1, 2:]
    x, y, z = a[2:, :-2], a[2:, 1:-1], a[2:, 2:]
    return p * (t * z - u * y) - q * (s * z - u * x) + r * (s * y - t * x)


def translation_agrees(w: Window, di: int, dj: int) -> Optional[np.ndarray]:
    """Elementwise u_{i,j} == u_{i+di,j+dj} on the overlap, None if there is none"""
    a = w.to_array()
    rows, cols = a.shape
    if abs(di) >= rows or abs(dj) >= cols:
        return None
    lo_r, hi_r = max(0, -di), rows - max(0, di)
    lo_c, hi_c = max(0, -dj), cols - max(0, dj)
    here = a[lo_r:hi_r, lo_c:hi_c]
    there = a[lo_r + di:hi_r + di, lo_c + dj:hi_c + dj]
    return (here == there).astype(bool)


def verify_window(w: Window, m: int, n: int) -> VerificationReport:
    """Check positivity, unit minors, tameness, divisibility and (m, n)-periodicity"""
    a = w.to_array()
    rows, cols = a.shape
    report = VerificationReport()

    positive = (a > 0).astype(bool)
    report.conditions.append(_condition('positivity', positive, w.i_min, w.j_min))

    minors = adjacent_minors(a) == 1 if rows >= 2 and cols >= 2 else None
    report.conditions.append(_condition('minors', _as_bool(minors), w.i_min, w.j_min))

    tame = adjacent_determinants3(a) == 0 if rows >= 3 and cols >= 3 else None
    report.conditions.append(_condition('tameness', _as_bool(tame), w.i_min, w.j_min))

    if positive.all():
        vertical = ((a[:-2, :] + a[2:, :]) % a[1:-1, :] == 0) if rows >= 3 else None
        horizontal = ((a[:, :-2] + a[:, 2:]) % a[:, 1:-1] == 0) if cols >= 3 else None
        report.conditions.append(_condition('row-divisibility', _as_bool(vertical), w.i_min + 1, w.j_min))
        report.conditions.append(_condition('column-divisibility', _as_bool(horizontal), w.i_min, w.j_min + 1))
    else:
        report.conditions.append(ConditionResult('row-divisibility', 'skipped'))
        report.conditions.append(ConditionResult('column-divisibility', 'skipped'))

    report.conditions.append(_condition('periodicity', translation_agrees(w, m, n), w.i_min, w.j_min))
    return report


def _as_bool(x: Optional[np.ndarray]) -> Optional[np.ndarray]:
    return None if x is None else np.asarray(x, dtype=bool)


def detect_periods(w: Window, search_bound: int) -> List[Tuple[int, int]]:
    """All (m, n) with 1 <= m, n <= search_bound under which the window is invariant"""
    found, testable = [], False
    for m in range(1, search_bound + 1):
        for n in range(1, search_bound + 1):
            agrees = translation_agrees(w, m, n)
            if agrees is None:
                continue
            testable = True
            if agrees.all():
                found.append((m, n))
    if not testable:
        raise WindowTooSmallError(
            f"a {w.shape[0]}x{w.shape[1]} window admits no period up to {search_bound}")
    return found
