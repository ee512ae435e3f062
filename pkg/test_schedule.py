#!/usr/bin/env python3
'''
Anneal schedules: presets, interpolation and CSV loading.

Runs under pytest, or standalone: python test_schedule.py
'''
import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

import numpy as np
import pytest
from fquench.errors import ConfigError
from fquench.schedule import default_schedule, linear_schedule, load_schedule

def write_csv(path, rows, header='s,gamma,jcal'):
    path.write_text(header + '\n' + '\n'.join(','.join(str(v) for v in r) for r in rows) + '\n')
    return str(path)

def test_default_endpoints():
    sched = default_schedule()
    assert sched.evaluate(0.0) == (1.0, 0.0)
    assert sched.evaluate(1.0) == (0.0, 1.0)
    g, j = sched.evaluate(0.5)
    assert abs(g - 0.5) < 1e-12 and abs(j - 0.5) < 1e-12

def test_monotone():
    sched = default_schedule()
    s = np.linspace(0, 1, 257)
    assert np.all(np.diff(sched.gamma(s)) <= 0)
    assert np.all(np.diff(sched.jcal(s)) >= 0)

def test_linear_interpolation():
    sched = linear_schedule()
    g, j = sched.evaluate(0.25)
    assert abs(g - 0.75) < 1e-15 and abs(j - 0.25) < 1e-15

def test_outside_unit_interval():
    with pytest.raises(ConfigError):
        default_schedule().evaluate(1.5)

def test_csv_round_trip(tmp_path):
    path = str(tmp_path / 'sched.csv')
    default_schedule().to_csv(path)
    back = load_schedule(path)
    assert np.allclose(back.knots, default_schedule().knots)

def test_normalised_on_load(tmp_path):
    path = write_csv(tmp_path / 's.csv', [(0, 4.0, 0), (0.5, 2.0, 1.0), (1, 0, 2.0)])
    sched = load_schedule(path)
    assert sched.evaluate(0.0) == (1.0, 0.0)
    assert sched.evaluate(1.0) == (0.0, 1.0)
    assert sched.evaluate(0.5) == (0.5, 0.5)

def test_missing_file_names_path(tmp_path):
    path = str(tmp_path / 'nowhere.csv')
    with pytest.raises(ConfigError, match='nowhere.csv'):
        load_schedule(path)

def test_error_names_row(tmp_path):
    path = write_csv(tmp_path / 's.csv', [(0, 1, 0), (0.5, 0.5, 0.5), (0.4, 0.4, 0.6), (1, 0, 1)])
    with pytest.raises(ConfigError, match='row 4'):
        load_schedule(path)

def test_increasing_gamma_rejected(tmp_path):
    path = write_csv(tmp_path / 's.csv', [(0, 1, 0), (0.5, 1.2, 0.5), (1, 0, 1)])
    with pytest.raises(ConfigError, match='gamma increases'):
        load_schedule(path)

def test_missing_column(tmp_path):
    path = write_csv(tmp_path / 's.csv', [(0, 1), (1, 0)], header='s,gamma')
    with pytest.raises(ConfigError, match='jcal'):
        load_schedule(path)

def _run():
    import inspect, pathlib, tempfile
    for name, fn in list(globals().items()):
        if not name.startswith('test_') or not callable(fn):
            continue
        kwargs = {}
        if 'tmp_path' in inspect.signature(fn).parameters:
            kwargs['tmp_path'] = pathlib.Path(tempfile.mkdtemp())
        fn(**kwargs)
        print(f'✓ {name}')

if __name__ == '__main__':
    _run()
