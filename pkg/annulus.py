"""
AnnulusTilings Annulus Combinatorics Module
Arcs on the marked annulus A(m,n), crossings, triangulations and ear surgery
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Tuple, Union

from scipy.special import comb

from config import BOUNDARY_P, BOUNDARY_Q, STEP_RIGHT, STEP_UP
from errors import (EmptyBoundaryError, FormatError, IndexOutOfRangeError,
                    NotAnEarError, PreconditionViolatedError)
from tiling import LatticePath, Position, check_periods

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class MarkedAnnulus:
    """m marked points P_0..P_{m-1} outside, n points Q_0..Q_{n-1} inside"""
    m: int
    n: int

    def __post_init__(self):
        check_periods(self.m, self.n)

    def period(self, boundary: str) -> int:
        return self.m if boundary == BOUNDARY_P else self.n


@dataclass(frozen=True)
class Bridging:
    """Arc P_p -- Q_q given by one lift; the others are (p + km, q + kn)"""
    p: int
    q: int

    def sort_key(self) -> Tuple[int, int, int]:
        return (0, self.p, self.q)


@dataclass(frozen=True)
class PeripheralP:
    """Arc joining lifts P_start and P_{start+span} along the outer boundary"""
    start: int
    span: int

    def sort_key(self) -> Tuple[int, int, int]:
        return (1, self.start, self.span)


@dataclass(frozen=True)
class PeripheralQ:
    start: int
    span: int

    def sort_key(self) -> Tuple[int, int, int]:
        return (2, self.start, self.span)


Arc = Union[Bridging, PeripheralP, PeripheralQ]


def normalize_arc(arc: Arc, annulus: MarkedAnnulus) -> Arc:
    """Representative lift: p in [0, m) for bridging arcs, start reduced mod the period otherwise"""
    if isinstance(arc, Bridging):
        k = arc.p // annulus.m
        return Bridging(arc.p - k * annulus.m, arc.q - k * annulus.n)
    if isinstance(arc, PeripheralP):
        return PeripheralP(arc.start % annulus.m, arc.span)
    return PeripheralQ(arc.start % annulus.n, arc.span)


def arc_is_valid(arc: Arc, annulus: MarkedAnnulus) -> bool:
    if isinstance(arc, Bridging):
        return True
    period = annulus.m if isinstance(arc, PeripheralP) else annulus.n
    return 2 <= arc.span <= period


def _interleave(a: int, b: int, c: int, d: int) -> bool:
    return a < c < b < d or c < a < d < b


def _peripheral_crosses(x: Arc, y: Arc, period: int) -> bool:
    base = (x.start - y.start) // period
    for k in range(base - 2, base + 3):
        shift = y.start + k * period
        if _interleave(x.start, x.start + x.span, shift, shift + y.span):
            return True
    return False


def crosses(a1: Arc, a2: Arc, annulus: MarkedAnnulus) -> bool:
    """True iff some pair of lifts strictly interleaves on the universal cover"""
    a1, a2 = normalize_arc(a1, annulus), normalize_arc(a2, annulus)
    if a1 == a2:
        return False
    m, n = annulus.m, annulus.n

    if isinstance(a1, Bridging) and isinstance(a2, Bridging):
        dp, dq = a1.p - a2.p, a1.q - a2.q
        # the sign of (dp - km)(dq - kn) can only be negative between dp/m and dq/n
        lo, hi = min(dp // m, dq // n) - 1, max(dp // m, dq // n) + 1
        return any((dp - k * m) * (dq - k * n) < 0 for k in range(lo, hi + 1))

    if isinstance(a2, Bridging):
        a1, a2 = a2, a1
    if isinstance(a1, Bridging):
        if isinstance(a2, PeripheralP):
            return 1 <= (a1.p - a2.start) % m <= a2.span - 1
        return 1 <= (a1.q - a2.start) % n <= a2.span - 1

    if type(a1) is not type(a2):
        return False
    return _peripheral_crosses(a1, a2, m if isinstance(a1, PeripheralP) else n)


def is_triangulation(arcs: Iterable[Arc], annulus: MarkedAnnulus) -> bool:
    """Pairwise non-crossing, distinct, valid arcs, m + n of them"""
    arcs = list(arcs)
    if not all(arc_is_valid(a, annulus) for a in arcs):
        return False
    normalized = {normalize_arc(a, annulus) for a in arcs}
    if len(normalized) != len(arcs) or len(arcs) != annulus.m + annulus.n:
        return False
    return not any(crosses(x, y, annulus) for x, y in combinations(normalized, 2))


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Triangulation of A(m,n); equality is equality of canonical forms"""
    annulus: MarkedAnnulus
    arcs: Tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, 'arcs', tuple(self.arcs))
        if not is_triangulation(self.arcs, self.annulus):
            raise FormatError(f"arcs do not triangulate A({self.m},{self.n}): {self.arcs}")

    @property
    def m(self) -> int:
        return self.annulus.m

    @property
    def n(self) -> int:
        return self.annulus.n

    def key(self) -> Tuple:
        return (self.m, self.n) + tuple(
            sorted(normalize_arc(a, self.annulus).sort_key() for a in self.arcs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __lt__(self, other: 'Triangulation') -> bool:
        return self.key() < other.key()

    @property
    def bridging(self) -> List[Bridging]:
        return [a for a in self.arcs if isinstance(a, Bridging)]

    @property
    def peripheral(self) -> List[Arc]:
        return [a for a in self.arcs if not isinstance(a, Bridging)]


@dataclass(frozen=True)
class EarRecord:
    boundary: str
    removed_vertex_index: int
    insertion_position: int

    def to_dict(self) -> Dict:
        return {'boundary': self.boundary, 'removed_vertex_index': self.removed_vertex_index,
                'insertion_position': self.insertion_position}


def canonical_form(t: Triangulation) -> Triangulation:
    """Every arc as its representative lift, arcs sorted.

    Only deck translations of lifts are quotiented out; rotating the P or Q
    labels gives a different triangulation.
    """
    arcs = sorted((normalize_arc(a, t.annulus) for a in t.arcs), key=lambda a: a.sort_key())
    return Triangulation(t.annulus, tuple(arcs))


def staircase_triangulation(path: LatticePath) -> Triangulation:
    """All-bridging triangulation whose arcs are the points of a lattice path"""
    annulus = MarkedAnnulus(path.m, path.n)
    arcs = [Bridging(p.i, p.j) for p in path.points()[:-1]]
    return canonical_form(Triangulation(annulus, tuple(arcs)))


def bridging_path(t: Triangulation) -> LatticePath:
    """All-ones staircase through the lifts of an all-bridging triangulation"""
    if t.peripheral:
        raise PreconditionViolatedError("triangulation still has peripheral arcs")
    arcs = [normalize_arc(a, t.annulus) for a in t.bridging]
    lifts = sorted((a.p + k * t.m, a.q + k * t.n) for a in arcs for k in (-1, 0, 1))
    first = min(k for k, (i, _) in enumerate(lifts) if i == 0)
    run = lifts[first:first + t.m + t.n + 1]
    steps = ''.join(STEP_UP if b[0] > a[0] else STEP_RIGHT for a, b in zip(run, run[1:]))
    start = Position(*run[0])
    return LatticePath(t.m, t.n, start, steps, (1,) * (t.m + t.n + 1))


def fan_triangulation(m: int, n: int) -> Triangulation:
    return staircase_triangulation(LatticePath.fan(m, n))


def twist(t: Triangulation, k: int) -> Triangulation:
    """Shift every Q-label by k (k = n is one full Dehn twist)"""
    arcs = []
    for a in t.arcs:
        if isinstance(a, Bridging):
            arcs.append(Bridging(a.p, a.q + k))
        elif isinstance(a, PeripheralQ):
            arcs.append(PeripheralQ(a.start + k, a.span))
        else:
            arcs.append(a)
    return canonical_form(Triangulation(t.annulus, tuple(arcs)))


def _endpoint_counts(t: Triangulation) -> Dict[str, List[int]]:
    counts = {BOUNDARY_P: [0] * t.m, BOUNDARY_Q: [0] * t.n}
    for a in t.arcs:
        if isinstance(a, Bridging):
            counts[BOUNDARY_P][a.p % t.m] += 1
            counts[BOUNDARY_Q][a.q % t.n] += 1
        else:
            side = BOUNDARY_P if isinstance(a, PeripheralP) else BOUNDARY_Q
            period = t.annulus.period(side)
            counts[side][a.start % period] += 1
            counts[side][(a.start + a.span) % period] += 1
    return counts


def vertex_quiddity(t: Triangulation) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Number of triangles at each marked point (arc ends at one lift, plus one)"""
    counts = _endpoint_counts(t)
    return (tuple(c + 1 for c in counts[BOUNDARY_P]),
            tuple(c + 1 for c in counts[BOUNDARY_Q]))


def ears(t: Triangulation) -> List[Tuple[str, int]]:
    """Marked points with no arc endpoint, P side first, by index"""
    counts = _endpoint_counts(t)
    return [(side, v) for side in (BOUNDARY_P, BOUNDARY_Q)
            for v, c in enumerate(counts[side]) if c == 0]


def removal_map(v: int, period: int) -> Callable[[int], int]:
    """Order-preserving relabelling of the lifts left after deleting v + k*period"""
    def relabel(i: int) -> int:
        k, s = divmod(i - v, period)
        if s == 0:
            raise NotAnEarError(f"lift {i} sits on the removed vertex {v}")
        return v + k * (period - 1) + s - 1
    return relabel


def insertion_map(v: int, period: int) -> Callable[[int], int]:
    """Inverse of removal_map(v, period + 1)"""
    def relabel(i: int) -> int:
        k, s = divmod(i - v, period)
        return v + k * (period + 1) + s + 1
    return relabel


def _relabel_arcs(arcs: Iterable[Arc], boundary: str, f: Callable[[int], int]) -> List[Arc]:
    out = []
    for a in arcs:
        if isinstance(a, Bridging):
            out.append(Bridging(f(a.p), a.q) if boundary == BOUNDARY_P else Bridging(a.p, f(a.q)))
        elif isinstance(a, PeripheralP) and boundary == BOUNDARY_P:
            start = f(a.start)
            out.append(PeripheralP(start, f(a.start + a.span) - start))
        elif isinstance(a, PeripheralQ) and boundary == BOUNDARY_Q:
            start = f(a.start)
            out.append(PeripheralQ(start, f(a.start + a.span) - start))
        else:
            out.append(a)
    return out


def _ear_arc(boundary: str, v: int, period: int) -> Arc:
    cls = PeripheralP if boundary == BOUNDARY_P else PeripheralQ
    return cls((v - 1) % period, 2)


def remove_ear(t: Triangulation, boundary: str, vertex_index: int) -> Tuple[Triangulation, EarRecord]:
    """Cut off the triangle at an ear and relabel onto A(m-1,n) or A(m,n-1)"""
    period = t.annulus.period(boundary)
    if not 0 <= vertex_index < period:
        raise NotAnEarError(f"{boundary}_{vertex_index} is not a marked point of A({t.m},{t.n})")
    if period == 1:
        raise EmptyBoundaryError(f"removing {boundary}_{vertex_index} would empty the boundary")
    if (boundary, vertex_index) not in ears(t):
        raise NotAnEarError(f"{boundary}_{vertex_index} is not an ear")

    ear_arc = normalize_arc(_ear_arc(boundary, vertex_index, period), t.annulus)
    rest = [a for a in t.arcs if normalize_arc(a, t.annulus) != ear_arc]
    arcs = _relabel_arcs(rest, boundary, removal_map(vertex_index, period))
    if boundary == BOUNDARY_P:
        smaller = MarkedAnnulus(t.m - 1, t.n)
    else:
        smaller = MarkedAnnulus(t.m, t.n - 1)
    record = EarRecord(boundary, vertex_index, vertex_index % (period - 1))
    logger.debug("removed ear %s_%d from A(%d,%d)", boundary, vertex_index, t.m, t.n)
    return canonical_form(Triangulation(smaller, tuple(arcs))), record


def insert_ear(t: Triangulation, record: EarRecord) -> Triangulation:
    """Inverse of remove_ear: new marked point at record.removed_vertex_index"""
    if record.boundary not in (BOUNDARY_P, BOUNDARY_Q):
        raise FormatError(f"unknown boundary {record.boundary!r}")
    period = t.annulus.period(record.boundary)
    v = record.removed_vertex_index
    if not 0 <= v <= period:
        raise IndexOutOfRangeError(f"insertion index {v} outside [0, {period}]")
    if record.insertion_position != v % period:
        raise IndexOutOfRangeError(
            f"insertion position {record.insertion_position} does not follow vertex {v}")

    arcs = _relabel_arcs(t.arcs, record.boundary, insertion_map(v, period))
    arcs.append(_ear_arc(record.boundary, v, period + 1))
    if record.boundary == BOUNDARY_P:
        larger = MarkedAnnulus(t.m + 1, t.n)
    else:
        larger = MarkedAnnulus(t.m, t.n + 1)
    return canonical_form(Triangulation(larger, tuple(arcs)))


def ear_record(boundary: str, vertex_index: int, period_after: int) -> EarRecord:
    """Record for inserting a new marked point with this index into a boundary of period_after - 1 points"""
    return EarRecord(boundary, vertex_index, vertex_index % (period_after - 1))


def staircase_words(m: int, n: int) -> List[str]:
    """All words with m U's and n R's, lexicographic"""
    words = []
    for ups in combinations(range(m + n), m):
        chosen = set(ups)
        words.append(''.join(STEP_UP if k in chosen else STEP_RIGHT for k in range(m + n)))
    return sorted(words)


def enumerate_bridging(m: int, n: int, twist_min: int, twist_max: int) -> List[Triangulation]:
    """All-bridging triangulations: every staircase through (0, t), twist_min <= t <= twist_max"""
    check_periods(m, n)
    if twist_min > twist_max:
        raise ValueError(f"empty twist range [{twist_min}, {twist_max}]")
    found = {}
    for word in staircase_words(m, n):
        for t in range(twist_min, twist_max + 1):
            path = LatticePath(m, n, Position(0, t), word, (1,) * (m + n + 1))
            tri = staircase_triangulation(path)
            found.setdefault(tri.key(), tri)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("A(%d,%d): %d staircases x %d twists -> %d triangulations",
                     m, n, comb(m + n, m, exact=True), twist_max - twist_min + 1, len(found))
    return [found[k] for k in sorted(found)]


def _grow(t: Triangulation, m: int, n: int) -> Iterable[Triangulation]:
    if t.m < m:
        for v in range(t.m + 1):
            yield insert_ear(t, ear_record(BOUNDARY_P, v, t.m + 1))
    if t.n < n:
        for v in range(t.n + 1):
            yield insert_ear(t, ear_record(BOUNDARY_Q, v, t.n + 1))


def enumerate_triangulations(m: int, n: int, twist_min: int, twist_max: int,
                             ear_depth: int = 0) -> List[Triangulation]:
    """Triangulations of A(m,n) with at most ear_depth peripheral arcs.

    Every such triangulation peels down to an all-bridging one on
    A(m-a, n-b) with a + b peripheral arcs removed; we run that backwards.
    """
    check_periods(m, n)
    found: Dict[Tuple, Triangulation] = {}
    for a in range(ear_depth + 1):
        for b in range(ear_depth + 1 - a):
            if m - a < 1 or n - b < 1:
                continue
            layer = {t.key(): t for t in enumerate_bridging(m - a, n - b, twist_min, twist_max)}
            for _ in range(a + b):
                layer = {g.key(): g for t in layer.values() for g in _grow(t, m, n)}
            found.update(layer)
    return [found[k] for k in sorted(found)]
