"""
AnnulusTilings Main Application
Command-line front end: tilings, triangulations, friezes and Farey paths
"""

import argparse
import json
import re
import logging
import sys
from typing import List, Optional, Tuple

from annulus import enumerate_triangulations, vertex_quiddity
from bijection import (check_seed, extend_seed, reduction_chain,
                       tiling_from_triangulation, triangulation_from_tiling)
from config import (DEFAULT_FRIEZE_COLUMNS, DEFAULT_FRIEZE_ROWS,
                    DEFAULT_WINDOW, EXIT_MALFORMED, EXIT_OK, EXIT_REJECTED,
                    FUZZ_SEED_DEFAULT, FUZZ_WORKERS, LOG_FORMAT,
                    PERIOD_SEARCH_BOUND, PROG_NAME)
from errors import FormatError, TilingError
from farey import paths_from_tiling
from formats import (TextComponents, dumps, loads, path_from_json, path_to_json,
                     paths_to_json, triangulation_from_json,
                     triangulation_to_json, window_from_json, window_to_json)
from frieze import (SIDE_COLUMN, SIDE_ROW, col_quiddity, frieze_from_quiddity,
                    growth, growth_from_frieze, monodromy, row_quiddity)
from oracle import (exhaustive_bijection_check, falsify_bad_periods,
                    fuzz_seeds, tiling_periods)
from tiling import PeriodicTiling, detect_periods, verify_window

logger = logging.getLogger(PROG_NAME)

text = TextComponents()

LIST_OPTIONS = ('--window', '--twists', '--exhaustive')
LIST_VALUE = re.compile(r'^-\d[\d,-]*$')


# ============================================================================
# ARGUMENT HELPERS
# ============================================================================

def int_list(count: int):
    def parse(value: str) -> Tuple[int, ...]:
        try:
            parts = tuple(int(x) for x in value.split(','))
        except ValueError:
            raise argparse.ArgumentTypeError(f"{value!r} is not a comma-separated integer list")
        if len(parts) != count:
            raise argparse.ArgumentTypeError(f"expected {count} integers, got {value!r}")
        return parts
    return parse


def join_list_values(argv: List[str]) -> List[str]:
    """Glue '--window -2,4,-2,4' into '--window=-2,4,-2,4' so argparse does not read the value as a flag."""
    joined = []
    pending = False
    for token in argv:
        if pending and LIST_VALUE.match(token):
            joined[-1] = f"{joined[-1]}={token}"
        else:
            joined.append(token)
        pending = token in LIST_OPTIONS
    return joined


def read_json(filename: str):
    try:
        with open(filename) as f:
            return loads(f.read())
    except OSError as e:
        raise FormatError(f"cannot read {filename}: {e.strerror}")


def load_tiling(args) -> PeriodicTiling:
    if getattr(args, 'triangulation', None):
        return tiling_from_triangulation(triangulation_from_json(read_json(args.triangulation)))
    return extend_seed(path_from_json(read_json(args.path)))


def emit(doc) -> None:
    print(dumps(doc))


def emit_window(window, fmt: str) -> None:
    if fmt == 'text':
        print(text.render_window(window))
    elif fmt == 'diamond':
        print(text.render_diamond(window))
    else:
        emit(window_to_json(window))


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_generate(args) -> int:
    tiling = load_tiling(args)
    emit_window(tiling.window(*args.window), args.format)
    return EXIT_OK


def cmd_extend(args) -> int:
    tiling = load_tiling(args)
    if args.window:
        emit_window(tiling.window(*args.window), args.format)
    else:
        doc = {'seed': path_to_json(tiling.seed),
               'row_quiddity': [str(v) for v in tiling.row_quiddity],
               'col_quiddity': [str(v) for v in tiling.col_quiddity]}
        if args.periods:
            doc['periods'] = [list(p) for p in tiling_periods(tiling, args.periods)]
        emit(doc)
    return EXIT_OK


def cmd_check(args) -> int:
    report = check_seed(path_from_json(read_json(args.path)))
    emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_REJECTED


def cmd_reduce(args) -> int:
    tiling = load_tiling(args)
    chain = reduction_chain(tiling)
    emit({
        'start': {'m': tiling.m, 'n': tiling.n, 'seed': path_to_json(tiling.seed)},
        'steps': [{'record': record.to_dict(), 'm': t.m, 'n': t.n,
                   'row_quiddity': [str(v) for v in t.row_quiddity],
                   'col_quiddity': [str(v) for v in t.col_quiddity]} for t, record in chain],
        'triangulation': triangulation_to_json(triangulation_from_tiling(tiling)),
    })
    return EXIT_OK


def cmd_quiddity(args) -> int:
    tiling = load_tiling(args)
    doc = {'row': [str(v) for v in row_quiddity(tiling).values],
           'column': [str(v) for v in col_quiddity(tiling).values]}
    if args.triangulation:
        p_side, q_side = vertex_quiddity(triangulation_from_json(read_json(args.triangulation)))
        doc['triangles'] = {'P': list(p_side), 'Q': list(q_side)}
    if args.format == 'text':
        print(text.render_quiddity('row', doc['row']))
        print(text.render_quiddity('column', doc['column']))
    else:
        emit(doc)
    return EXIT_OK


def cmd_growth(args) -> int:
    tiling = load_tiling(args)
    rows, cols = row_quiddity(tiling), col_quiddity(tiling)
    values = {
        'tiling': growth(tiling),
        'row_frieze': growth_from_frieze(frieze_from_quiddity(rows), tiling.m),
        'column_frieze': growth_from_frieze(frieze_from_quiddity(cols), tiling.n),
        'row_trace': monodromy(rows).trace,
        'column_trace': monodromy(cols).trace,
    }
    if len(set(values.values())) != 1:
        logger.warning("growth computations disagree: %s", values)
    emit({'growth': str(values['tiling']), 'checks': {k: str(v) for k, v in values.items()}})
    return EXIT_OK


def cmd_frieze(args) -> int:
    tiling = load_tiling(args)
    q = row_quiddity(tiling) if args.side == SIDE_ROW else col_quiddity(tiling)
    pattern = frieze_from_quiddity(q)
    if args.format == 'text':
        print(text.render_frieze(pattern, args.rows, args.columns))
    else:
        emit({'side': args.side, 'quiddity': [str(v) for v in q.values],
              'rows': [[str(v) for v in pattern.diagonal(d, 0, args.columns - 1)]
                       for d in range(args.rows)]})
    return EXIT_OK


def cmd_farey(args) -> int:
    tiling = load_tiling(args)
    i_min, i_max, j_min, j_max = args.window
    p_path, r_path, mono = paths_from_tiling(tiling, (i_min, i_max), (j_min, j_max))
    emit(paths_to_json(p_path, r_path, mono))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    lo, hi = args.twists
    found = enumerate_triangulations(args.m, args.n, lo, hi, args.ears)
    emit([triangulation_to_json(t) for t in found])
    return EXIT_OK


def cmd_window(args) -> int:
    window = window_from_json(read_json(args.file))
    if args.periods:
        emit({'periods': [list(p) for p in detect_periods(window, args.periods)]})
    else:
        emit_window(window, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.window:
        window = window_from_json(read_json(args.window))
        report = verify_window(window, window.m, window.n)
    elif args.exhaustive:
        m, n, lo, hi, depth = args.exhaustive
        report = exhaustive_bijection_check(m, n, (lo, hi), depth)
    elif args.fuzz is not None:
        report = fuzz_seeds(args.fuzz, args.seed, args.workers)
    else:
        report = falsify_bad_periods(args.periods, PERIOD_SEARCH_BOUND, args.seed, args.workers)
    if args.format == 'text' and hasattr(report, 'to_frame'):
        print(text.render_report('verify', report))
    else:
        emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_REJECTED


# ============================================================================
# PARSER
# ============================================================================

def add_tiling_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--triangulation', metavar='FILE', help='triangulation JSON')
    source.add_argument('--path', metavar='FILE', help='lattice path seed JSON')


def add_format(parser: argparse.ArgumentParser, choices=('json', 'text', 'diamond')) -> None:
    parser.add_argument('--format', choices=choices, default='json')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG_NAME, description='Periodic SL2-tilings and triangulations of the annulus')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('generate', help='tiling window of a triangulation')
    p.add_argument('--triangulation', metavar='FILE', required=True)
    p.add_argument('--window', type=int_list(4), default=DEFAULT_WINDOW, metavar='I0,I1,J0,J1')
    add_format(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('extend', help='extend a lattice path seed')
    p.add_argument('--path', metavar='FILE', required=True)
    p.add_argument('--window', type=int_list(4), metavar='I0,I1,J0,J1')
    p.add_argument('--periods', type=int, metavar='BOUND', help='also list every period pair up to BOUND')
    add_format(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser('check', help='divisibility conditions of a seed')
    p.add_argument('--path', metavar='FILE', required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('reduce', help='ear reduction chain of a tiling')
    add_tiling_source(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser('quiddity', help='row and column quiddity')
    add_tiling_source(p)
    add_format(p, ('json', 'text'))
    p.set_defaults(func=cmd_quiddity)

    p = sub.add_parser('growth', help='growth coefficient')
    add_tiling_source(p)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser('frieze', help='infinite frieze pattern of one boundary')
    add_tiling_source(p)
    p.add_argument('--rows', type=int, default=DEFAULT_FRIEZE_ROWS)
    p.add_argument('--columns', type=int, default=DEFAULT_FRIEZE_COLUMNS)
    p.add_argument('--side', choices=(SIDE_ROW, SIDE_COLUMN), default=SIDE_ROW)
    add_format(p, ('json', 'text'))
    p.set_defaults(func=cmd_frieze)

    p = sub.add_parser('farey', help='Farey paths and monodromy')
    add_tiling_source(p)
    p.add_argument('--window', type=int_list(4), default=DEFAULT_WINDOW, metavar='I0,I1,J0,J1')
    p.set_defaults(func=cmd_farey)

    p = sub.add_parser('enumerate', help='list triangulations')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--twists', type=int_list(2), default=(0, 0), metavar='A,B')
    p.add_argument('--ears', type=int, default=0)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser('window', help='render a saved window or detect its periods')
    p.add_argument('--file', metavar='FILE', required=True)
    p.add_argument('--periods', type=int, metavar='BOUND')
    add_format(p)
    p.set_defaults(func=cmd_window)

    p = sub.add_parser('verify', help='window checks and oracle runs')
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument('--window', metavar='FILE')
    mode.add_argument('--exhaustive', type=int_list(5), metavar='M,N,A,B,DEPTH')
    mode.add_argument('--fuzz', type=int, metavar='TRIALS')
    mode.add_argument('--periods', type=int, metavar='TRIALS')
    p.add_argument('--seed', type=int, default=FUZZ_SEED_DEFAULT)
    p.add_argument('--workers', type=int, default=FUZZ_WORKERS)
    add_format(p, ('json', 'text'))
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(join_list_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return EXIT_MALFORMED if e.code else EXIT_OK

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format=LOG_FORMAT, stream=sys.stderr)
    try:
        return args.func(args)
    except FormatError as e:
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return EXIT_MALFORMED
    except TilingError as e:
        logger.debug("rejected: %s", e)
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return EXIT_REJECTED
    except ValueError as e:
        print(json.dumps({"error": "ValueError", "message": str(e)}), file=sys.stderr)
        return EXIT_MALFORMED


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
