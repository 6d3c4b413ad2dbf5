import json
import os
import shutil
import tempfile
from io import StringIO

import numpy as np

from sphere_dubins.cli import main
from sphere_dubins.constants import ExitCodes
from sphere_dubins.utils import write_text_file

FIG3 = ['--r', '0.4', '--target', '0.6942,0.5498,0.4646']


def run(args):
    out = StringIO()
    code = main(args, out=out)
    return code, out.getvalue()


def run_json(args):
    code, text = run(args)
    assert code == ExitCodes.SUCCESS, (args, code)
    return json.loads(text)


def test_plan_fig3():
    data = run_json(['plan'] + FIG3)
    assert data['optimal_type'] == 'LG'
    assert data['candidates'][data['optimal']]['type'] == 'LG'
    assert abs(data['candidates'][data['optimal']]['length'] - data['length']) == 0
    types = set(c['type'] for c in data['candidates'])
    assert set(['LG', 'RG', 'LR']) <= types
    for c in data['candidates']:
        assert c['residual'] <= 1e-8


def test_plan_trivial():
    data = run_json(['plan', '--r', '0.3', '--target', '1,0,0'])
    assert data['optimal_type'] == 'TRIVIAL'
    assert data['length'] == 0


def test_plan_deterministic():
    a = run(['plan'] + FIG3)
    b = run(['plan'] + FIG3)
    assert a == b


def test_plan_options():
    code, text = run(['plan', '--text', '--degrees'] + FIG3)
    assert code == 0
    assert 'deg' in text
    assert 'optimal: LG' in text

    data = run_json(['plan', '--sorted'] + FIG3)
    lengths = [c['length'] for c in data['candidates']]
    assert lengths == sorted(lengths)
    assert data['optimal'] == 0

    data = run_json(['plan', '--samples', '5'] + FIG3)
    assert len(data['waypoints']) == 5


def test_input_errors():
    assert run(['plan', '--r', '0.6', '--target', '0,1,0'])[0] == ExitCodes.INPUT_ERROR
    assert run(['plan', '--r', '0.3', '--target', '0,2,0'])[0] == ExitCodes.INPUT_ERROR
    assert run(['plan', '--r', '0.3'])[0] == ExitCodes.INPUT_ERROR
    assert run(['plan', '--samples', '1'] + FIG3)[0] == ExitCodes.INPUT_ERROR
    assert run(['plan', '--instance', 'x.yaml'] + FIG3)[0] == ExitCodes.INPUT_ERROR
    assert run([])[0] == ExitCodes.INPUT_ERROR
    assert run(['fly'])[0] == ExitCodes.INPUT_ERROR


def test_sample_antipode():
    code, text = run(['sample', '--r', '0.3', '--target=-1,0,0', '--samples', '3'])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == '# s x y z tx ty tz segment type'
    rows = [line.split() for line in lines[1:]]
    assert len(rows) == 3
    expected = [(0, [1, 0, 0], [0, 1, 0]),
                (np.pi / 2, [0, 1, 0], [-1, 0, 0]),
                (np.pi, [-1, 0, 0], [0, -1, 0])]
    for row, (s, X, T) in zip(rows, expected):
        values = np.array([float(v) for v in row[:7]])
        assert np.max(np.abs(values - np.array([s] + X + T))) <= 1e-12
        assert row[7:] == ['0', 'G']


def test_sample_to_file():
    d = tempfile.mkdtemp()
    try:
        fn = os.path.join(d, 'out', 'path.txt')
        code, text = run(['sample', '--out', fn, '--samples', '200'] + FIG3)
        assert code == 0
        assert text == ''
        with open(fn) as f:
            lines = f.read().splitlines()
        rows = np.array([[float(v) for v in line.split()[:7]] for line in lines[1:]])
        assert rows.shape == (200, 7)
        assert np.all(np.diff(rows[:, 0]) > 0)
        assert np.max(np.abs(np.linalg.norm(rows[:, 1:4], axis=1) - 1)) <= 1e-12
        target = np.array([0.6942, 0.5498, 0.4646])
        target /= np.linalg.norm(target)
        assert np.linalg.norm(rows[-1, 1:4] - target) <= 1e-9
    finally:
        shutil.rmtree(d)


def test_oracle():
    data = run_json(['oracle', '--grid-step', '0.01'] + FIG3)
    o = data['oracle']
    assert o['feasible']
    assert o['words_searched'] == 21
    assert o['gap'] <= o['resolution_bound']
    assert o['residual'] <= o['chord_tolerance']

    data = run_json(['oracle', '--grid-step', '0.01', '--r', '0.3', '--target', '1,0,0'])
    assert data['oracle']['length'] == 0
    assert data['oracle']['word'] == ''

    assert run(['oracle', '--processes', '0'] + FIG3)[0] == ExitCodes.INPUT_ERROR
    assert run(['oracle', '--grid-step', '-1'] + FIG3)[0] == ExitCodes.INPUT_ERROR


def test_verify():
    code, text = run(['verify', '--dl-samples', '10'])
    assert code == ExitCodes.SUCCESS
    assert text.splitlines()[-1] == 'PASS: 12 of 12 checks passed'

    code, text = run(['verify', '--dl-samples', '10', '--tolerance', '1e-20'])
    assert code == ExitCodes.CHECKS_FAILED
    assert 'FAIL' in text

    data = run_json(['verify', '--json', '--dl-samples', '10'])
    assert data['status'] == 'PASS'


def test_instance_file():
    d = tempfile.mkdtemp()
    try:
        fn = os.path.join(d, 'fig3.yaml')
        write_text_file('r: 0.4\ntarget: [0.6942, 0.5498, 0.4646]\n', fn)
        data = run_json(['plan', '--instance', fn])
        assert data['optimal_type'] == 'LG'
        assert data['instance']['r'] == 0.4
    finally:
        shutil.rmtree(d)


if __name__ == '__main__':
    import pytest

    pytest.main([__file__])
