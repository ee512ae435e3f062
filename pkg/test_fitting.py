#!/usr/bin/env python3
'''
Power-law fits, F-test intervals and error bars.

Runs under pytest, or standalone: python test_fitting.py
'''
import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

import numpy as np
import pytest
import lmfit
from scipy import stats
from fquench.errors import ConfigError
from fquench.analysis import (fit_power_law, f_statistic, f_test_interval, f_test_profile,
                              batch_error, bootstrap_mean_ci)

def line(x, a=0.0, b=1.0):
    return a + b*x

def test_exact_power_law():
    x = np.geomspace(1, 64, 7)
    fit = fit_power_law(x, 3.0*x**-1.5)
    assert fit.exponent == pytest.approx(-1.5, abs=1e-12)
    assert fit.prefactor == pytest.approx(3.0, rel=1e-12)
    assert fit.ci[0] == pytest.approx(-1.5, abs=1e-9)
    assert fit.ci[1] == pytest.approx(-1.5, abs=1e-9)
    assert fit.n_points == 7
    assert np.allclose(fit.predict(x), 3.0*x**-1.5)

def test_noisy_interval_holds_truth():
    rng = np.random.Generator(np.random.Philox(8))
    x = np.geomspace(1, 100, 20)
    y = x**-1.0 * np.exp(rng.normal(0, 0.05, size=20))
    fit = fit_power_law(x, y, resamples=400, seed=1)
    assert fit.ci[0] <= -1.0 <= fit.ci[1]
    assert fit.ci[0] <= fit.exponent <= fit.ci[1]

def test_interval_coverage():
    rng = np.random.Generator(np.random.Philox(17))
    x = np.geomspace(1, 100, 40)
    hits = 0
    for trial in range(100):
        y = 2.0*x**-0.8 * np.exp(rng.normal(0, 0.1, size=x.size))
        lo, hi = fit_power_law(x, y, seed=trial).ci
        hits += lo <= -0.8 <= hi
    assert hits >= 90

def test_too_few_points():
    with pytest.raises(ConfigError, match='at least 3'):
        fit_power_law([1, 2], [1, 0.5])
    with pytest.raises(ConfigError, match='positive'):
        fit_power_law([1, 2, 3], [1, 0, 2])

def test_scale_equivariance():
    rng = np.random.Generator(np.random.Philox(2))
    x = np.geomspace(2, 50, 9)
    y = 0.7*x**0.4 * np.exp(rng.normal(0, 0.02, size=9))
    base = fit_power_law(x, y, seed=5)
    scaled = fit_power_law(10*x, 4*y, seed=5)
    assert scaled.exponent == pytest.approx(base.exponent, abs=1e-12)
    assert np.allclose(scaled.ci, base.ci, atol=1e-12)

def test_f_statistic():
    assert f_statistic(15.0, 10.0, 12, 2) == pytest.approx(5.0)
    with pytest.raises(ConfigError):
        f_statistic(1.0, 0.0, 12, 2)
    with pytest.raises(ConfigError):
        f_statistic(1.0, 1.0, 2, 2)

def test_f_test_matches_linear_theory():
    rng = np.random.Generator(np.random.Philox(13))
    x = np.linspace(0, 10, 25)
    y = 1.0 + 0.5*x + rng.normal(0, 0.3, size=x.size)
    n = x.size
    slope, intercept = np.polyfit(x, y, 1)
    chi2 = np.sum((y - intercept - slope*x)**2)
    sxx = np.sum((x - x.mean())**2)
    sigma_b = np.sqrt(chi2 / (n - 2) / sxx)
    half = stats.t.ppf(0.975, n - 2) * sigma_b

    model = lmfit.Model(line)
    grid = np.linspace(slope - 3*half, slope + 3*half, 241)
    profile = f_test_profile(x, y, model, 'b', grid, params=model.make_params(a=0.0, b=1.0))
    assert profile.best == pytest.approx(slope, rel=1e-6)
    interval = profile.interval()
    assert not interval.is_open
    assert slope - interval.lower == pytest.approx(half, rel=0.1)
    assert interval.upper - slope == pytest.approx(half, rel=0.1)

def test_f_test_unknown_parameter():
    model = lmfit.Model(line)
    with pytest.raises(ConfigError, match='no parameter'):
        f_test_profile([0, 1, 2], [0, 1, 2], model, 'c', [0.0])

def test_open_interval_flagged():
    interval = f_test_interval(0.0, 10.0, 12, 2, [-1.0, 1.0], [10.1, 100.0])
    assert interval.open_lower and not interval.open_upper
    assert interval.lower == -1.0
    assert 0.0 < interval.upper < 1.0
    assert interval.is_open

def test_batch_error():
    rng = np.random.Generator(np.random.Philox(0))
    values = rng.normal(0, 1, size=10000)
    assert 0.006 < batch_error(values, 100) < 0.015
    assert batch_error(np.full(500, 2.0), 100) == 0.0
    assert batch_error([1.0, 2.0, 3.0], 100) == pytest.approx(1/np.sqrt(3))
    assert np.isnan(batch_error([1.0], 100))

def test_bootstrap_mean():
    values = np.arange(20, dtype=float)
    mean, (lo, hi) = bootstrap_mean_ci(values, seed=4)
    assert mean == pytest.approx(9.5)
    assert lo < mean < hi
    assert bootstrap_mean_ci(values, seed=4) == (mean, (lo, hi))
    with pytest.raises(ConfigError):
        bootstrap_mean_ci([])

def _run():
    for name, fn in list(globals().items()):
        if not name.startswith('test_') or not callable(fn):
            continue
        fn()
        print(f'✓ {name}')

if __name__ == '__main__':
    _run()
