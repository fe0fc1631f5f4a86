"""
AnnulusTilings Oracle Module
Brute-force ground truth: minor-rule window filling, exhaustive bijection runs,
randomized seed and period scans
"""

import logging
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

import pandas as pd

from annulus import (Triangulation, canonical_form, ear_record,
                     enumerate_triangulations, insert_ear,
                     staircase_triangulation, staircase_words, twist,
                     vertex_quiddity)
from bijection import (check_seed, tiling_from_triangulation,
                       triangulation_from_tiling)
from config import (BOUNDARY_P, BOUNDARY_Q, BRUTE_RADIUS_DEFAULT, EXHAUSTIVE_LIMITS, FUZZ_MAX_PERIOD,
                    FUZZ_MAX_VALUE, FUZZ_SEED_DEFAULT, FUZZ_TRIALS_DEFAULT,
                    FUZZ_WORKERS, INJECTIVITY_WINDOW_PERIODS,
                    PERIOD_SEARCH_BOUND)
from errors import PreconditionViolatedError
from farey import FareyVertex
from tiling import (LatticePath, PeriodicTiling, Position, Window,
                    detect_periods, translation_agrees, verify_window)

logger = logging.getLogger(__name__)

NON_INTEGRAL = 'NonIntegral'
NON_POSITIVE = 'NonPositive'


# ============================================================================
# MINOR-RULE WINDOW FILLING
# ============================================================================

@dataclass(frozen=True)
class BruteFailure:
    position: Position
    kind: str

    def to_dict(self) -> Dict:
        return {'position': [self.position.i, self.position.j], 'kind': self.kind}


def _solve_block(cells: Dict[Tuple[int, int], int], i: int, j: int) -> Optional[Tuple[Tuple[int, int], int, int]]:
    """The missing corner of the block at (i, j) as (cell, numerator, denominator)"""
    a, b, c, d = (i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)
    missing = [x for x in (a, b, c, d) if x not in cells]
    if len(missing) != 1:
        return None
    # c * b - a * d = 1
    cell = missing[0]
    if cell == d:
        return d, cells[c] * cells[b] - 1, cells[a]
    if cell == a:
        return a, cells[c] * cells[b] - 1, cells[d]
    if cell == b:
        return b, cells[a] * cells[d] + 1, cells[c]
    return c, cells[a] * cells[d] + 1, cells[b]


def brute_extend(path: LatticePath, radius: int = BRUTE_RADIUS_DEFAULT) -> Union[Window, BruteFailure]:
    """Fill the rectangle start +- radius*(m, n) outward from the path, one 2x2 block at a time"""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    i_lo, i_hi = path.start.i - radius * path.m, path.start.i + radius * path.m
    j_lo, j_hi = path.start.j - radius * path.n, path.start.j + radius * path.n

    cells: Dict[Tuple[int, int], int] = {}
    for k in range(-radius * path.length, radius * path.length + 1):
        p = path.point(k)
        cells[(p.i, p.j)] = path.value(k)

    def blocks_at(i: int, j: int):
        for bi, bj in ((i - 1, j - 1), (i - 1, j), (i, j - 1), (i, j)):
            if i_lo <= bi < i_hi and j_lo <= bj < j_hi:
                yield bi, bj

    queue = deque(b for cell in sorted(cells) for b in blocks_at(*cell))
    while queue:
        solved = _solve_block(cells, *queue.popleft())
        if solved is None:
            continue
        cell, numerator, denominator = solved
        value = Fraction(numerator, denominator)
        if value.denominator != 1:
            return BruteFailure(Position(*cell), NON_INTEGRAL)
        if value <= 0:
            return BruteFailure(Position(*cell), NON_POSITIVE)
        cells[cell] = int(value)
        queue.extend(blocks_at(*cell))

    entries = [[cells[(i, j)] for j in range(j_lo, j_hi + 1)] for i in range(i_lo, i_hi + 1)]
    return Window(i_lo, i_hi, j_lo, j_hi, entries, m=path.m, n=path.n)


def brute_crossing_count(a: FareyVertex, c: FareyVertex) -> int:
    """Farey edges strictly interleaving with {a, c}, for a, c in [0, 1].

    A crossing edge bounds a Stern-Brocot interval that strictly contains a or
    c, so both its denominators stay below max(den a, den c).
    """
    lo_v, hi_v = sorted((Fraction(a.p, a.q), Fraction(c.p, c.q)))
    if lo_v < 0 or hi_v > 1:
        raise ValueError("brute crossing count needs both vertices in [0, 1]")
    bound = max(a.q, c.q)
    count = 0
    stack = [((0, 1), (1, 1))]
    while stack:
        left, right = stack.pop()
        u, v = Fraction(*left), Fraction(*right)
        if (u < lo_v < v < hi_v) or (lo_v < u < hi_v < v):
            count += 1
        med = (left[0] + right[0], left[1] + right[1])
        if med[1] <= bound:
            stack.append((left, med))
            stack.append((med, right))
    return count


# ============================================================================
# EXHAUSTIVE BIJECTION CHECK
# ============================================================================

@dataclass
class BijectionReport:
    m: int
    n: int
    twist_range: Tuple[int, int]
    ear_depth: int
    triangulations: int = 0
    round_trip_failures: List[str] = field(default_factory=list)
    quiddity_mismatches: List[str] = field(default_factory=list)
    window_failures: List[str] = field(default_factory=list)
    collisions: List[Tuple[str, str]] = field(default_factory=list)
    quiddities: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.round_trip_failures or self.quiddity_mismatches
                    or self.window_failures or self.collisions)

    def to_dict(self) -> Dict:
        return {
            'm': self.m, 'n': self.n,
            'twist_range': list(self.twist_range), 'ear_depth': self.ear_depth,
            'triangulations': self.triangulations, 'passed': self.passed,
            'round_trip_failures': self.round_trip_failures,
            'quiddity_mismatches': self.quiddity_mismatches,
            'window_failures': self.window_failures,
            'collisions': [list(c) for c in self.collisions],
        }


def _describe(t: Triangulation) -> str:
    return repr(t.key())


def exhaustive_bijection_check(m: int, n: int, twist_range: Tuple[int, int],
                               ear_depth: int = 0) -> BijectionReport:
    """Round trips, injectivity on windows and window verification for every enumerated triangulation"""
    lo, hi = twist_range
    if max(m, n) > EXHAUSTIVE_LIMITS['max_period'] or hi - lo + 1 > EXHAUSTIVE_LIMITS['max_twist_span'] \
            or ear_depth > EXHAUSTIVE_LIMITS['max_ear_depth']:
        raise PreconditionViolatedError(
            f"exhaustive check limited to {EXHAUSTIVE_LIMITS}, got m={m} n={n} twists={twist_range} depth={ear_depth}")

    report = BijectionReport(m, n, (lo, hi), ear_depth)
    rows, cols = INJECTIVITY_WINDOW_PERIODS * m, INJECTIVITY_WINDOW_PERIODS * n
    seen: Dict[Tuple, Triangulation] = {}

    for tri in enumerate_triangulations(m, n, lo, hi, ear_depth):
        report.triangulations += 1
        tiling = tiling_from_triangulation(tri)
        back = triangulation_from_tiling(tiling)
        if back != canonical_form(tri) or tiling_from_triangulation(back) != tiling:
            report.round_trip_failures.append(_describe(tri))

        quiddities = (tiling.row_quiddity, tiling.col_quiddity)
        report.quiddities.append(quiddities)
        if vertex_quiddity(tri) != quiddities:
            report.quiddity_mismatches.append(_describe(tri))

        window = tiling.window(0, rows - 1, 0, cols - 1)
        if not verify_window(window, m, n).passed:
            report.window_failures.append(_describe(tri))

        key = tuple(map(tuple, window.entries))
        if key in seen and seen[key] != tri:
            report.collisions.append((_describe(seen[key]), _describe(tri)))
        seen.setdefault(key, tri)

    logger.info("exhaustive check A(%d,%d) twists %s depth %d: %d triangulations, passed=%s",
                m, n, twist_range, ear_depth, report.triangulations, report.passed)
    return report


# ============================================================================
# RANDOMIZED SCANS
# ============================================================================

def random_seed(rng: random.Random, max_period: int = FUZZ_MAX_PERIOD,
                max_value: int = FUZZ_MAX_VALUE) -> LatticePath:
    m, n = rng.randint(1, max_period), rng.randint(1, max_period)
    steps = rng.choice(staircase_words(m, n))
    values = [rng.randint(1, max_value) for _ in range(m + n)]
    return LatticePath(m, n, Position(0, 0), steps, tuple(values + values[:1]))


def random_triangulation(rng: random.Random, max_period: int = FUZZ_MAX_PERIOD,
                         max_ears: int = 2) -> Triangulation:
    """Random staircase core, random twist, then up to max_ears random ear insertions"""
    m, n = rng.randint(1, max_period), rng.randint(1, max_period)
    word = rng.choice(staircase_words(m, n))
    core = staircase_triangulation(LatticePath(m, n, Position(0, 0), word, (1,) * (m + n + 1)))
    tri = twist(core, rng.randint(-2, 2))
    for _ in range(rng.randint(0, max_ears)):
        boundary = rng.choice((BOUNDARY_P, BOUNDARY_Q))
        period = tri.m if boundary == BOUNDARY_P else tri.n
        v = rng.randint(0, period)
        tri = insert_ear(tri, ear_record(boundary, v, period + 1))
    return tri


@dataclass
class TrialOutcome:
    trial: int
    m: int
    n: int
    passed: bool
    detail: str = ''

    def to_dict(self) -> Dict:
        return {'trial': self.trial, 'm': self.m, 'n': self.n,
                'passed': self.passed, 'detail': self.detail}


@dataclass
class ScanReport:
    name: str
    outcomes: List[TrialOutcome] = field(default_factory=list)

    @property
    def violations(self) -> List[TrialOutcome]:
        return [o for o in self.outcomes if not o.passed]

    @property
    def passed(self) -> bool:
        return not self.violations

    def get_scan_statistics(self) -> Dict:
        if not self.outcomes:
            return {'trials': 0, 'violations': 0}
        frame = pd.DataFrame([o.to_dict() for o in self.outcomes])
        by_period = frame.groupby(['m', 'n'])['passed'].agg(['count', 'sum'])
        return {
            'trials': len(frame),
            'violations': int((~frame['passed']).sum()),
            'by_period': {f"{m},{n}": {'trials': int(r['count']), 'passed': int(r['sum'])}
                          for (m, n), r in by_period.iterrows()},
        }

    def to_dict(self) -> Dict:
        return {'scan': self.name, 'passed': self.passed,
                'statistics': self.get_scan_statistics(),
                'violations': [o.to_dict() for o in self.violations]}


class FuzzScanner:
    """Runs independent randomized trials in a thread pool, one RNG per trial"""

    def __init__(self, seed: int = FUZZ_SEED_DEFAULT, workers: int = FUZZ_WORKERS):
        self.seed = seed
        self.workers = workers

    def scan(self, name: str, trials: int, trial_fn: Callable[[int, random.Random], TrialOutcome],
             progress_callback: Optional[Callable[[int, int], None]] = None) -> ScanReport:
        report = ScanReport(name)

        def process_trial(k: int) -> TrialOutcome:
            return trial_fn(k, random.Random(self.seed * 1_000_003 + k))

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            future_to_trial = {executor.submit(process_trial, k): k for k in range(trials)}
            completed = 0
            for future in as_completed(future_to_trial):
                report.outcomes.append(future.result())
                completed += 1
                if progress_callback:
                    progress_callback(completed, trials)

        report.outcomes.sort(key=lambda o: o.trial)
        logger.info("%s: %d trials, %d violations", name, trials, len(report.violations))
        return report


def seed_trial(k: int, rng: random.Random, radius: int = BRUTE_RADIUS_DEFAULT) -> TrialOutcome:
    """check_seed verdict against the outcome of the brute-force filler"""
    path = random_seed(rng)
    verdict = check_seed(path).passed
    filled = brute_extend(path, radius)
    extended = isinstance(filled, Window)
    detail = f"steps={path.steps} values={list(path.values)} check={verdict} brute={extended}"
    if extended and verdict:
        window = PeriodicTiling(path).window(filled.i_min, filled.i_max, filled.j_min, filled.j_max)
        if window.entries != filled.entries:
            return TrialOutcome(k, path.m, path.n, False, detail + " entries differ")
    return TrialOutcome(k, path.m, path.n, verdict == extended, detail)


def period_trial(k: int, rng: random.Random, bound: int = PERIOD_SEARCH_BOUND) -> TrialOutcome:
    """Translations other than multiples of the primitive period never fix a tiling window"""
    tri = random_triangulation(rng)
    tiling = tiling_from_triangulation(tri)
    side = 3 * bound + 1
    window = tiling.window(-side, side, -side, side)
    found = detect_periods(window, bound)
    detail = f"triangulation={tri.key()} periods={found}"
    if found:
        # detect_periods sorts, so found[0] is the primitive candidate
        p0, q0 = found[0]
        if any(p * q0 != q * p0 or p % p0 for p, q in found):
            return TrialOutcome(k, tri.m, tri.n, False, detail + " periods are not collinear multiples")
    if max(tri.m, tri.n) <= bound and (tri.m, tri.n) not in found:
        return TrialOutcome(k, tri.m, tri.n, False, detail + " own period missing")

    for a in range(0, bound + 1):
        for b in range(-bound, 1):
            if (a, b) == (0, 0):
                continue
            agrees = translation_agrees(window, a, b)
            if agrees is not None and agrees.all():
                return TrialOutcome(k, tri.m, tri.n, False, detail + f" invariant under ({a},{b})")
    return TrialOutcome(k, tri.m, tri.n, True, detail)


def fuzz_seeds(trials: int = FUZZ_TRIALS_DEFAULT, seed: int = FUZZ_SEED_DEFAULT,
               workers: int = FUZZ_WORKERS) -> ScanReport:
    return FuzzScanner(seed, workers).scan('seed-equivalence', trials, seed_trial)


def falsify_bad_periods(trials: int, bound: int = PERIOD_SEARCH_BOUND, seed: int = FUZZ_SEED_DEFAULT,
                        workers: int = FUZZ_WORKERS) -> ScanReport:
    return FuzzScanner(seed, workers).scan(
        'bad-periods', trials, lambda k, rng: period_trial(k, rng, bound))


def tiling_periods(t: PeriodicTiling, bound: int = PERIOD_SEARCH_BOUND) -> List[Tuple[int, int]]:
    side = 3 * bound + 1
    return detect_periods(t.window(-side, side, -side, side), bound)
