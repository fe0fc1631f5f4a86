"""
AnnulusTilings Farey Module
Farey-graph paths of a tiling, Ptolemy identity and geodesic crossing counts
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Tuple, Union

from errors import CyclicOrderError, FormatError, InternalInconsistencyError
from frieze import Monodromy
from tiling import PeriodicTiling, Position

logger = logging.getLogger(__name__)

Vector = Tuple[int, int]


@dataclass(frozen=True, order=True)
class FareyVertex:
    """p/q in lowest terms with q > 0, or (1, 0) for infinity"""
    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise FormatError("(0, 0) is not a Farey vertex")
        if gcd(self.p, self.q) != 1 or self.q < 0 or (self.q == 0 and self.p != 1):
            raise FormatError(f"({self.p}, {self.q}) is not in canonical form")

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def vector(self) -> Vector:
        return (self.p, self.q)

    def __str__(self) -> str:
        return 'inf' if self.is_infinite else f"{self.p}/{self.q}"


def det(v: Union[Vector, FareyVertex], w: Union[Vector, FareyVertex]) -> int:
    """p_v q_w - q_v p_w"""
    v = v.vector if isinstance(v, FareyVertex) else v
    w = w.vector if isinstance(w, FareyVertex) else w
    return v[0] * w[1] - v[1] * w[0]


def canonical(v: Vector) -> FareyVertex:
    p, q = v
    g = gcd(p, q)
    if g == 0:
        raise FormatError("(0, 0) is not a Farey vertex")
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return FareyVertex(p, q)


def is_edge(v: FareyVertex, w: FareyVertex) -> bool:
    return abs(det(v, w)) == 1


@dataclass(frozen=True)
class FareyPath:
    """Vectors indexed start, start+1, ...; consecutive determinants are +-1"""
    start: int
    vectors: Tuple[Vector, ...]

    def __getitem__(self, k: int) -> Vector:
        if not self.start <= k < self.start + len(self.vectors):
            raise IndexError(f"path index {k} outside [{self.start}, {self.stop})")
        return self.vectors[k - self.start]

    @property
    def stop(self) -> int:
        return self.start + len(self.vectors)

    @property
    def indices(self) -> range:
        return range(self.start, self.stop)

    def vertices(self) -> List[FareyVertex]:
        return [canonical(v) for v in self.vectors]


def tiling_entry_from_paths(p_path: FareyPath, r_path: FareyPath, i: int, j: int) -> int:
    """u_{i,j} = det(P_i, R_j)"""
    return det(p_path[i], r_path[j])


def _three_term(first: Vector, second: Vector, lo: int, hi: int, coefficient) -> Dict[int, Vector]:
    """Vectors X_lo..X_hi from X_0, X_1 and X_{k+1} = c_k X_k - X_{k-1}"""
    out = {0: first, 1: second}
    for k in range(1, hi):
        c = coefficient(k)
        out[k + 1] = (c * out[k][0] - out[k - 1][0], c * out[k][1] - out[k - 1][1])
    for k in range(0, lo, -1):
        c = coefficient(k)
        out[k - 1] = (c * out[k][0] - out[k + 1][0], c * out[k][1] - out[k + 1][1])
    return out


def paths_from_tiling(t: PeriodicTiling, i_range: Tuple[int, int],
                      j_range: Tuple[int, int]) -> Tuple[FareyPath, FareyPath, Monodromy]:
    """Farey paths P (rows) and R (columns) with u_{i,j} = det(P_i, R_j).

    R_0 = (1, 0), R_1 = (0, 1), P_i = (u_{i,1}, -u_{i,0}); the monodromy M
    satisfies R_{j+n} = M R_j and P_{i+m} = M P_i.
    """
    i_min, i_max = i_range
    j_min, j_max = j_range
    p0 = (t.entry(Position(0, 1)), -t.entry(Position(0, 0)))
    p1 = (t.entry(Position(1, 1)), -t.entry(Position(1, 0)))

    p_lo, p_hi = min(i_min, 0), max(i_max + t.m, 1)
    r_lo, r_hi = min(j_min, 0), max(j_max + t.n, t.n + 1)
    ps = _three_term(p0, p1, p_lo, p_hi, t.a)
    rs = _three_term((1, 0), (0, 1), r_lo, r_hi, t.b)

    (r, s), (r1, s1) = rs[t.n], rs[t.n + 1]
    mono = Monodromy(((r, r1), (s, s1)))

    for i in range(p_lo, p_hi):
        if det(ps[i + 1], ps[i]) != 1:
            raise InternalInconsistencyError(f"det(P_{i + 1}, P_{i}) != 1")
    for j in range(r_lo, r_hi):
        if det(rs[j], rs[j + 1]) != 1:
            raise InternalInconsistencyError(f"det(R_{j}, R_{j + 1}) != 1")
    for i in range(i_min, i_max + 1):
        if mono.apply(ps[i]) != ps[i + t.m]:
            raise InternalInconsistencyError(f"monodromy does not carry P_{i} to P_{i + t.m}")

    p_path = FareyPath(i_min, tuple(ps[i] for i in range(i_min, i_max + 1)))
    r_path = FareyPath(j_min, tuple(rs[j] for j in range(j_min, j_max + 1)))
    logger.debug("Farey paths over i %s, j %s; monodromy %s", i_range, j_range, mono.matrix)
    return p_path, r_path, mono


def _order_key(v: FareyVertex):
    return (1, 0) if v.is_infinite else (0, Fraction(v.p, v.q))


def _in_cyclic_order(vs: List[FareyVertex]) -> bool:
    ranks = sorted(range(len(vs)), key=lambda k: _order_key(vs[k]))
    position = [0] * len(vs)
    for rank, k in enumerate(ranks):
        position[k] = rank
    size = len(vs)
    forward = all((position[k + 1] - position[k]) % size == 1 for k in range(size - 1))
    backward = all((position[k] - position[k + 1]) % size == 1 for k in range(size - 1))
    return forward or backward


def ptolemy_check(a: FareyVertex, b: FareyVertex, c: FareyVertex, d: FareyVertex) -> bool:
    """det(a,c) det(b,d) = det(a,b) det(c,d) + det(a,d) det(b,c) for a, b, c, d in cyclic order"""
    vs = [a, b, c, d]
    if len(set(vs)) != 4:
        raise CyclicOrderError(f"vertices are not distinct: {[str(v) for v in vs]}")
    if not _in_cyclic_order(vs):
        raise CyclicOrderError(f"{[str(v) for v in vs]} are not in cyclic order")
    signed = det(a, c) * det(b, d) == det(a, b) * det(c, d) + det(a, d) * det(b, c)
    unsigned = abs(det(a, c) * det(b, d)) == abs(det(a, b) * det(c, d)) + abs(det(a, d) * det(b, c))
    return signed and unsigned


def _bezout(p: int, q: int) -> Tuple[int, int]:
    """(r, s) with p s - q r = 1 for coprime p, q"""
    old_r, r = p, q
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    # old_x p + old_y q = old_r = +-1
    s, r_ = old_x * old_r, -old_y * old_r
    return r_, s


def crossing_count(a: FareyVertex, c: FareyVertex) -> int:
    """Number of Farey edges crossed by the geodesic from a to c.

    An SL2(Z) move sends a to infinity; the geodesic becomes the vertical line
    over t = g(c), which crosses exactly the Stern-Brocot intervals around t.
    """
    if a == c:
        return 0
    r, s = _bezout(a.p, a.q)
    x, y = s * c.p - r * c.q, -a.q * c.p + a.p * c.q
    if y < 0:
        x, y = -x, -y
    if y == 1:
        return 0

    floor = x // y
    lo, hi = (floor, 1), (floor + 1, 1)
    count = 0
    while True:
        count += 1
        med = (lo[0] + hi[0], lo[1] + hi[1])
        if med[0] * y == x * med[1]:
            return count
        if x * med[1] < med[0] * y:
            hi = med
        else:
            lo = med
