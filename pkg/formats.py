"""
AnnulusTilings Formats Module
JSON codecs and plain-text rendering for windows, paths, triangulations and reports
"""

import json
from typing import Any, Dict, List

from annulus import (Bridging, MarkedAnnulus, PeripheralP, PeripheralQ,
                     Triangulation, canonical_form)
from config import BOUNDARY_P, BOUNDARY_Q, JSON_INDENT
from errors import FormatError
from farey import FareyPath
from frieze import InfiniteFriezePattern, Monodromy
from tiling import LatticePath, Position, Window


def _int(value: Any, what: str) -> int:
    """Accept a JSON integer or a decimal string"""
    if isinstance(value, bool):
        raise FormatError(f"{what}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            raise FormatError(f"{what}: {value!r} is not a decimal integer")
    raise FormatError(f"{what}: expected an integer, got {value!r}")


def _field(doc: Dict, key: str) -> Any:
    if not isinstance(doc, dict):
        raise FormatError(f"expected a JSON object, got {type(doc).__name__}")
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    return doc[key]


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}")


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=JSON_INDENT)


# ============================================================================
# WINDOWS
# ============================================================================

def window_to_json(w: Window) -> Dict:
    if w.m is None or w.n is None:
        raise FormatError("window has no periods attached")
    return {'m': w.m, 'n': w.n, 'i_min': w.i_min, 'j_min': w.j_min,
            'rows': [[str(v) for v in row] for row in w.rows_top_down()]}


def window_from_json(doc: Dict) -> Window:
    rows = _field(doc, 'rows')
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError("'rows' must be a non-empty list of lists")
    i_min, j_min = _int(_field(doc, 'i_min'), 'i_min'), _int(_field(doc, 'j_min'), 'j_min')
    entries = [[_int(v, 'entry') for v in row] for row in reversed(rows)]
    return Window(i_min, i_min + len(rows) - 1, j_min, j_min + len(rows[0]) - 1, entries,
                  m=_int(_field(doc, 'm'), 'm'), n=_int(_field(doc, 'n'), 'n'))


# ============================================================================
# LATTICE PATHS
# ============================================================================

def path_to_json(path: LatticePath) -> Dict:
    return {'m': path.m, 'n': path.n, 'start': [path.start.i, path.start.j],
            'steps': path.steps, 'values': [str(v) for v in path.values]}


def path_from_json(doc: Dict) -> LatticePath:
    start = _field(doc, 'start')
    if not isinstance(start, list) or len(start) != 2:
        raise FormatError("'start' must be [i, j]")
    steps = _field(doc, 'steps')
    if not isinstance(steps, str):
        raise FormatError("'steps' must be a string")
    values = _field(doc, 'values')
    if not isinstance(values, list):
        raise FormatError("'values' must be a list")
    return LatticePath(_int(_field(doc, 'm'), 'm'), _int(_field(doc, 'n'), 'n'),
                       Position(_int(start[0], 'start'), _int(start[1], 'start')),
                       steps, tuple(_int(v, 'value') for v in values))


# ============================================================================
# TRIANGULATIONS
# ============================================================================

def triangulation_to_json(t: Triangulation) -> Dict:
    t = canonical_form(t)
    bridging, peripheral = [], []
    for a in t.arcs:
        if isinstance(a, Bridging):
            bridging.append([a.p, a.q])
        else:
            boundary = BOUNDARY_P if isinstance(a, PeripheralP) else BOUNDARY_Q
            peripheral.append({'boundary': boundary, 'from': a.start, 'span': a.span})
    return {'m': t.m, 'n': t.n, 'bridging': bridging, 'peripheral': peripheral}


def triangulation_from_json(doc: Dict) -> Triangulation:
    annulus = MarkedAnnulus(_int(_field(doc, 'm'), 'm'), _int(_field(doc, 'n'), 'n'))
    arcs = []
    bridging, peripheral = _field(doc, 'bridging'), doc.get('peripheral', [])
    if not isinstance(bridging, list) or not isinstance(peripheral, list):
        raise FormatError("'bridging' and 'peripheral' must be lists")
    for pair in bridging:
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"bridging arc must be [p, q], got {pair!r}")
        arcs.append(Bridging(_int(pair[0], 'p'), _int(pair[1], 'q')))
    for arc in peripheral:
        boundary = _field(arc, 'boundary')
        cls = {BOUNDARY_P: PeripheralP, BOUNDARY_Q: PeripheralQ}.get(boundary)
        if cls is None:
            raise FormatError(f"unknown boundary {boundary!r}")
        arcs.append(cls(_int(_field(arc, 'from'), 'from'), _int(_field(arc, 'span'), 'span')))
    return Triangulation(annulus, tuple(arcs))


# ============================================================================
# FAREY PATHS
# ============================================================================

def farey_path_to_json(path: FareyPath) -> Dict:
    return {'start': path.start, 'vectors': [[str(p), str(q)] for p, q in path.vectors]}


def monodromy_to_json(m: Monodromy) -> Dict:
    return {'matrix': [[str(x) for x in row] for row in m.matrix], 'trace': str(m.trace)}


def paths_to_json(p_path: FareyPath, r_path: FareyPath, m: Monodromy) -> Dict:
    return {'P': farey_path_to_json(p_path), 'R': farey_path_to_json(r_path),
            'monodromy': monodromy_to_json(m)}


# ============================================================================
# TEXT RENDERING
# ============================================================================

class TextComponents:
    """Plain-text renderings for the command line"""

    def render_window(self, w: Window) -> str:
        """Rows top-down under a '# m= n= origin=' header"""
        header = f"# m={w.m} n={w.n} origin=({w.i_min},{w.j_min})"
        return '\n'.join([header] + [' '.join(str(v) for v in row) for row in w.rows_top_down()])

    def render_diamond(self, w: Window) -> str:
        """Window rotated by 45 degrees: u_{i,j} on line i + j (highest first), column j - i"""
        width = max(len(str(v)) for row in w.entries for v in row)
        c_min = w.j_min - w.i_max
        lines = []
        for s in range(w.i_max + w.j_max, w.i_min + w.j_min - 1, -1):
            cells: Dict[int, str] = {}
            for i in range(w.i_min, w.i_max + 1):
                j = s - i
                if w.j_min <= j <= w.j_max:
                    cells[j - i - c_min] = str(w.value(i, j)).rjust(width)
            if not cells:
                continue
            line = [' ' * width] * (max(cells) + 1)
            for c, text in cells.items():
                line[c] = text
            lines.append(' '.join(line).rstrip())
        return '\n'.join(lines)

    def render_frieze(self, f: InfiniteFriezePattern, rows: int, columns: int) -> str:
        """Frieze rows v_{k,k+d}, d = 0..rows-1, each shifted half a cell to the right"""
        table = [f.diagonal(d, 0, columns - 1) for d in range(rows)]
        width = max(len(str(v)) for row in table for v in row)
        lines = []
        for d, row in enumerate(table):
            indent = ' ' * (d * (width + 1) // 2)
            lines.append(indent + ' '.join(str(v).rjust(width) for v in row))
        return '\n'.join(lines)

    def render_report(self, title: str, frame) -> str:
        """Any report with a to_frame() (or a DataFrame) as an aligned table"""
        table = frame.to_frame() if hasattr(frame, 'to_frame') else frame
        return f"# {title}\n{table.to_string(index=False)}"

    def render_quiddity(self, label: str, values: List[int]) -> str:
        return f"{label}: ({','.join(str(v) for v in values)})"
