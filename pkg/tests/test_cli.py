import json

import pytest

from annulus import enumerate_bridging
from main import join_list_values, run

EXAMPLE = {
    'm': 3, 'n': 2,
    'bridging': [[0, -1], [0, 0], [0, 1]],
    'peripheral': [{'boundary': 'P', 'from': 0, 'span': 2},
                   {'boundary': 'P', 'from': 0, 'span': 3}],
}
FIBONACCI_PATH = {'m': 1, 'n': 1, 'start': [0, 0], 'steps': 'RU', 'values': ['1', '1', '1']}
BAD_PATH = {'m': 1, 'n': 1, 'start': [0, 0], 'steps': 'RU', 'values': [2, 3, 2]}


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return _write


def output(capsys):
    return json.loads(capsys.readouterr().out)


def test_generate_window(write, capsys):
    code = run(['generate', '--triangulation', write('t.json', EXAMPLE), '--window', '0,3,0,1'])
    assert code == 0
    doc = output(capsys)
    assert (doc['m'], doc['n'], doc['i_min'], doc['j_min']) == (3, 2, 0, 0)
    assert doc['rows'] == [['2', '1'], ['3', '2'], ['4', '3'], ['1', '1']]


def test_generate_text(write, capsys):
    assert run(['generate', '--triangulation', write('t.json', EXAMPLE),
                '--window', '0,1,0,1', '--format', 'text']) == 0
    assert capsys.readouterr().out.splitlines() == ['# m=3 n=2 origin=(0,0)', '4 3', '1 1']


def test_extend_reports_quiddities(write, capsys):
    assert run(['extend', '--path', write('p.json', FIBONACCI_PATH)]) == 0
    doc = output(capsys)
    assert doc['row_quiddity'] == ['3'] and doc['col_quiddity'] == ['3']
    assert 'periods' not in doc


def test_extend_lists_periods(write, capsys):
    assert run(['extend', '--path', write('p.json', FIBONACCI_PATH), '--periods', '2']) == 0
    assert output(capsys)['periods'] == [[1, 1], [2, 2]]


def test_extend_rejects_bad_seed(write, capsys):
    assert run(['extend', '--path', write('p.json', BAD_PATH)]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err['error'] == 'PreconditionViolatedError'
    assert err['report']['passed'] is False


@pytest.mark.parametrize('doc, code', [(FIBONACCI_PATH, 0), (BAD_PATH, 1)])
def test_check(write, capsys, doc, code):
    assert run(['check', '--path', write('p.json', doc)]) == code
    assert output(capsys)['passed'] is (code == 0)


def test_reduce(write, capsys):
    assert run(['reduce', '--triangulation', write('t.json', EXAMPLE)]) == 0
    doc = output(capsys)
    assert [s['record']['index'] for s in doc['steps']] == [1, 1]
    assert doc['steps'][0]['record']['removed_values'] == ['4', '3']
    assert doc['triangulation'] == EXAMPLE


def test_quiddity(write, capsys):
    assert run(['quiddity', '--triangulation', write('t.json', EXAMPLE)]) == 0
    doc = output(capsys)
    assert doc['row'] == ['7', '1', '2'] and doc['column'] == ['2', '3']
    assert doc['triangles'] == {'P': [7, 1, 2], 'Q': [2, 3]}


def test_growth(write, capsys):
    assert run(['growth', '--triangulation', write('t.json', EXAMPLE)]) == 0
    doc = output(capsys)
    assert doc['growth'] == '4'
    assert set(doc['checks'].values()) == {'4'}


def test_frieze(write, capsys):
    assert run(['frieze', '--path', write('p.json', FIBONACCI_PATH), '--rows', '3', '--columns', '4']) == 0
    doc = output(capsys)
    assert doc['rows'] == [['0'] * 4, ['1'] * 4, ['3'] * 4]


def test_farey(write, capsys):
    assert run(['farey', '--path', write('p.json', FIBONACCI_PATH), '--window', '0,1,0,2']) == 0
    doc = output(capsys)
    assert doc['P']['vectors'] == [['1', '-1'], ['1', '-2']]
    assert doc['R']['vectors'] == [['1', '0'], ['0', '1'], ['-1', '3']]
    assert doc['monodromy']['trace'] == '3'


def test_enumerate(capsys):
    assert run(['enumerate', '--m', '1', '--n', '1']) == 0
    assert len(output(capsys)) == 2


def test_negative_list_values(write, capsys):
    seed = write('p.json', FIBONACCI_PATH)
    assert run(['farey', '--path', seed, '--window', '-2,4,-2,4']) == 0
    doc = output(capsys)
    assert len(doc['P']['vectors']) == 7
    assert len(doc['R']['vectors']) == 7

    assert run(['enumerate', '--m', '1', '--n', '1', '--twists', '-1,1']) == 0
    assert len(output(capsys)) == len(enumerate_bridging(1, 1, -1, 1))


@pytest.mark.parametrize('argv, expected', [
    (['farey', '--window', '-2,4,-2,4'], ['farey', '--window=-2,4,-2,4']),
    (['enumerate', '--twists', '-3,-1'], ['enumerate', '--twists=-3,-1']),
    (['generate', '--window', '0,4,0,4'], ['generate', '--window', '0,4,0,4']),
    (['verify', '--window', 'w.json', '-v'], ['verify', '--window', 'w.json', '-v']),
    (['generate', '--window=-1,1,-1,1'], ['generate', '--window=-1,1,-1,1']),
])
def test_join_list_values(argv, expected):
    assert join_list_values(argv) == expected


def test_window_periods_and_verify(write, capsys):
    assert run(['generate', '--triangulation', write('t.json', EXAMPLE), '--window', '-6,6,-6,6']) == 0
    window = output(capsys)
    saved = write('w.json', window)

    assert run(['window', '--file', saved, '--periods', '4']) == 0
    assert output(capsys)['periods'] == [[3, 2]]

    assert run(['verify', '--window', saved]) == 0
    assert output(capsys)['passed'] is True

    window['rows'][3][3] = '5'
    assert run(['verify', '--window', write('bad.json', window)]) == 1
    assert output(capsys)['passed'] is False


def test_verify_exhaustive(capsys):
    assert run(['verify', '--exhaustive', '1,2,0,1,1']) == 0
    assert output(capsys)['passed'] is True


@pytest.mark.parametrize('argv', [
    ['bogus'],
    ['generate'],
    ['generate', '--triangulation', 'x.json', '--window', '1,2'],
    ['verify', '--fuzz', '3', '--periods', '3'],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_help(capsys):
    assert run(['--help']) == 0
    assert 'generate' in capsys.readouterr().out


def test_malformed_inputs(write, capsys):
    assert run(['check', '--path', write('p.json', '{not json')]) == 2
    assert json.loads(capsys.readouterr().err)['error'] == 'FormatError'

    assert run(['check', '--path', write('missing.json', {'m': 1})]) == 2
    assert run(['check', '--path', 'does-not-exist.json']) == 2

    crossing = {'m': 1, 'n': 1, 'bridging': [[0, 0], [0, 2]]}
    assert run(['generate', '--triangulation', write('c.json', crossing)]) == 2


def test_empty_window_bounds(write, capsys):
    assert run(['generate', '--triangulation', write('t.json', EXAMPLE), '--window', '3,2,0,0']) == 2
    assert json.loads(capsys.readouterr().err)['error'] == 'ValueError'


def test_text_outputs(write, capsys):
    t = write('t.json', EXAMPLE)
    assert run(['quiddity', '--triangulation', t, '--format', 'text']) == 0
    assert capsys.readouterr().out.splitlines() == ['row: (7,1,2)', 'column: (2,3)']

    assert run(['generate', '--triangulation', t, '--window', '0,4,0,4']) == 0
    saved = write('w.json', output(capsys))
    assert run(['verify', '--window', saved, '--format', 'text']) == 0
    out = capsys.readouterr().out
    assert out.startswith('# verify') and 'tameness' in out
