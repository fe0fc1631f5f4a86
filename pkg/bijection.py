"""
AnnulusTilings Bijection Module
Triangulations of A(m,n) <-> positive integral (m,n)-periodic SL2-tilings
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from annulus import (Arc, Bridging, EarRecord, PeripheralP, Triangulation,
                     bridging_path, canonical_form, ear_record, ears,
                     insert_ear, insertion_map, remove_ear, removal_map,
                     staircase_triangulation)
from config import BOUNDARY_P, BOUNDARY_Q, STEP_RIGHT, STEP_UP
from errors import InternalInconsistencyError, PreconditionViolatedError
from frieze import SIDE_COLUMN, SIDE_ROW, frieze_entry_from_tiling
from tiling import LatticePath, PeriodicTiling, Position

logger = logging.getLogger(__name__)

__all__ = [
    'LatticePath', 'SeedCondition', 'CheckReport', 'ReductionRecord', 'NoPeripheral',
    'check_seed', 'extend_seed', 'tiling_from_triangulation', 'triangulation_from_tiling',
    'insert_line', 'reduce', 'reduction_chain', 'find_unit_staircase', 'arc_value',
]

KIND_STRAIGHT = 'Straight'
KIND_CORNER = 'Corner'
AXIS_ROW = 'Row'
AXIS_COLUMN = 'Column'


@dataclass(frozen=True)
class SeedCondition:
    point_index: int
    kind: str
    numerator: int
    denominator: int

    @property
    def passes(self) -> bool:
        return self.numerator % self.denominator == 0

    def to_dict(self) -> Dict:
        return {'point_index': self.point_index, 'kind': self.kind,
                'numerator': str(self.numerator), 'denominator': str(self.denominator),
                'passes': self.passes}


@dataclass
class CheckReport:
    conditions: List[SeedCondition] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passes for c in self.conditions)

    @property
    def first_failure(self) -> Optional[SeedCondition]:
        return next((c for c in self.conditions if not c.passes), None)

    def to_dict(self) -> Dict:
        return {'passed': self.passed, 'conditions': [c.to_dict() for c in self.conditions]}


@dataclass(frozen=True)
class ReductionRecord:
    axis: str
    index: int
    removed_values: Tuple[int, ...]

    @property
    def boundary(self) -> str:
        return BOUNDARY_P if self.axis == AXIS_ROW else BOUNDARY_Q

    def to_dict(self) -> Dict:
        return {'axis': self.axis, 'index': self.index,
                'removed_values': [str(v) for v in self.removed_values]}


@dataclass(frozen=True)
class NoPeripheral:
    """reduce() found no quiddity equal to 1: a staircase of 1's exists"""


def check_seed(path: LatticePath) -> CheckReport:
    """One divisibility condition per point of the periodically extended path.

    A corner point (neighbours one row apart) needs u_k | u_{k-1} u_{k+1} + 1;
    a straight point needs u_k | u_{k-1} + u_{k+1}.
    """
    report = CheckReport()
    for k in range(path.length):
        before, after = path.point(k - 1), path.point(k + 1)
        left, right = path.value(k - 1), path.value(k + 1)
        if after.i - before.i == 1:
            report.conditions.append(SeedCondition(k, KIND_CORNER, left * right + 1, path.value(k)))
        else:
            report.conditions.append(SeedCondition(k, KIND_STRAIGHT, left + right, path.value(k)))
    return report


def extend_seed(path: LatticePath) -> PeriodicTiling:
    report = check_seed(path)
    if not report.passed:
        bad = report.first_failure
        raise PreconditionViolatedError(
            f"seed fails at point {bad.point_index}: {bad.numerator}/{bad.denominator}", report=report)
    return PeriodicTiling(path)


def insert_line(t: PeriodicTiling, record: Union[EarRecord, ReductionRecord]) -> PeriodicTiling:
    """New row (or column) family at the recorded index, each entry the sum of its neighbours"""
    if isinstance(record, ReductionRecord):
        boundary, v = record.boundary, record.index
    else:
        boundary, v = record.boundary, record.removed_vertex_index

    if boundary == BOUNDARY_P:
        period = t.m + 1
        old = removal_map(v, period)

        def lookup(i: int, j: int) -> int:
            if (i - v) % period == 0:
                return t.entry(Position(old(i - 1), j)) + t.entry(Position(old(i + 1), j))
            return t.entry(Position(old(i), j))
        return PeriodicTiling.from_entries(t.m + 1, t.n, lookup)

    period = t.n + 1
    old = removal_map(v, period)

    def lookup(i: int, j: int) -> int:
        if (j - v) % period == 0:
            return t.entry(Position(i, old(j - 1))) + t.entry(Position(i, old(j + 1)))
        return t.entry(Position(i, old(j)))
    return PeriodicTiling.from_entries(t.m, t.n + 1, lookup)


def peel_ears(t: Triangulation) -> Tuple[Triangulation, List[EarRecord]]:
    """Remove ears (P before Q, smallest index first) until only bridging arcs remain"""
    current, records = canonical_form(t), []
    while True:
        found = ears(current)
        if not found:
            return current, records
        boundary, v = found[0]
        current, record = remove_ear(current, boundary, v)
        records.append(record)


def tiling_from_triangulation(t: Triangulation) -> PeriodicTiling:
    core, records = peel_ears(t)
    tiling = extend_seed(bridging_path(core))
    for record in reversed(records):
        tiling = insert_line(tiling, record)
    logger.debug("A(%d,%d) triangulation -> tiling with quiddities %s, %s (%d ears)",
                 t.m, t.n, tiling.row_quiddity, tiling.col_quiddity, len(records))
    return tiling


def _remove_line(t: PeriodicTiling, axis: str, index: int) -> Tuple[PeriodicTiling, ReductionRecord]:
    if axis == AXIS_ROW:
        new = insertion_map(index, t.m - 1)
        line = [Position(index, j) for j in range(t.n)]
        above, below = (p.shifted(1, 0) for p in line), (p.shifted(-1, 0) for p in line)
        smaller = PeriodicTiling.from_entries(t.m - 1, t.n, lambda i, j: t.entry(Position(new(i), j)))
    else:
        new = insertion_map(index, t.n - 1)
        line = [Position(i, index) for i in range(t.m)]
        above, below = (p.shifted(0, 1) for p in line), (p.shifted(0, -1) for p in line)
        smaller = PeriodicTiling.from_entries(t.m, t.n - 1, lambda i, j: t.entry(Position(i, new(j))))

    removed = tuple(t.entry(p) for p in line)
    sums = tuple(t.entry(x) + t.entry(y) for x, y in zip(above, below))
    if removed != sums:
        raise InternalInconsistencyError(f"{axis} {index} is not the sum of its neighbours")
    return smaller, ReductionRecord(axis, index, removed)


def reduce(t: PeriodicTiling) -> Union[Tuple[PeriodicTiling, ReductionRecord], NoPeripheral]:
    """Remove the first row (then column) family whose quiddity is 1"""
    if t.m > 1:
        for i in range(t.m):
            if t.a(i) == 1:
                logger.debug("reducing row %d of (%d,%d)-tiling", i, t.m, t.n)
                return _remove_line(t, AXIS_ROW, i)
    if t.n > 1:
        for j in range(t.n):
            if t.b(j) == 1:
                logger.debug("reducing column %d of (%d,%d)-tiling", j, t.m, t.n)
                return _remove_line(t, AXIS_COLUMN, j)
    return NoPeripheral()


def reduction_chain(t: PeriodicTiling) -> List[Tuple[PeriodicTiling, ReductionRecord]]:
    chain = []
    while True:
        result = reduce(t)
        if isinstance(result, NoPeripheral):
            return chain
        t = result[0]
        chain.append(result)


def find_unit_staircase(t: PeriodicTiling) -> Optional[LatticePath]:
    """Staircase of 1's through the leftmost 1 of row 0, or None.

    With every column quiddity at least 2 the rows are convex, so row 0 is
    descended to its minimum first.
    """
    if 1 in t.row_quiddity or 1 in t.col_quiddity:
        return None
    u = lambda i, j: t.entry(Position(i, j))

    j = 0
    while u(0, j - 1) < u(0, j):
        j -= 1
    while u(0, j + 1) < u(0, j):
        j += 1
    if u(0, j) != 1:
        return None
    while u(0, j - 1) == 1:
        j -= 1

    start, i, steps = Position(0, j), 0, []
    for _ in range(t.m + t.n):
        # u_{i,j+1} and u_{i+1,j} are never both 1
        if u(i, j + 1) == 1:
            steps.append(STEP_RIGHT)
            j += 1
        elif u(i + 1, j) == 1:
            steps.append(STEP_UP)
            i += 1
        else:
            return None
    if (i, j) != (t.m, start.j + t.n):
        return None
    return LatticePath(t.m, t.n, start, ''.join(steps), (1,) * (t.m + t.n + 1))


def triangulation_from_tiling(t: PeriodicTiling) -> Triangulation:
    chain = reduction_chain(t)
    core = chain[-1][0] if chain else t
    path = find_unit_staircase(core)
    if path is None:
        raise InternalInconsistencyError(
            f"({core.m},{core.n})-tiling has neither a quiddity 1 nor a staircase of 1's")
    tri = staircase_triangulation(path)
    for _, record in reversed(chain):
        period = (tri.m if record.axis == AXIS_ROW else tri.n) + 1
        tri = insert_ear(tri, ear_record(record.boundary, record.index, period))
    return canonical_form(tri)


def arc_value(t: PeriodicTiling, arc: Arc) -> int:
    """Frieze value of an arc: u_{p,q} for a bridging lift, a frieze entry for a peripheral arc"""
    if isinstance(arc, Bridging):
        return t.entry(Position(arc.p, arc.q))
    side = SIDE_ROW if isinstance(arc, PeripheralP) else SIDE_COLUMN
    return frieze_entry_from_tiling(t, side, arc.start, arc.start + arc.span)
