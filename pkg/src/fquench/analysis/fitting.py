'''
Scaling fits and error bars.

    fit = fit_power_law(t_a, m, resamples=200, seed=3)
    fit.exponent, fit.ci

    profile = f_test_profile(x, y, lmfit.Model(line), 'slope', grid)
    profile.interval()

Power laws are straight lines in log-log space; the bootstrap resamples
the (x, y) points with replacement.  The F-test compares the chi-square
of the best fit with the chi-square obtained when one parameter is
held at a fixed value:

    F(P_fix, N - P) = (chi2_fixed / chi2_null - 1) * (N - P) / P_fix

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from dataclasses import dataclass, asdict
import numpy as np
from scipy import stats
from fquench.errors import ConfigError
import logging
log = logging.getLogger(__name__)

DefaultResamples = 200
Confidence = 0.95

@dataclass
class PowerLawFit:
    '''
        y = prefactor * x**exponent
    '''
    exponent: float
    prefactor: float
    boot_mean: float
    ci: tuple
    window: tuple
    n_points: int
    resamples: int

    def predict(self, x):
        return self.prefactor * np.asarray(x, dtype=float)**self.exponent

    def as_dict(self, prefix:str=''):
        d = asdict(self)
        ci = d.pop('ci')
        window = d.pop('window')
        d['ci_lo'], d['ci_hi'] = ci
        d['x_min'], d['x_max'] = window
        return {f'{prefix}{k}': v for k, v in d.items()}

    def __repr__(self):
        return f'<PowerLawFit exponent={self.exponent:.4g} [{self.ci[0]:.4g}, {self.ci[1]:.4g}]>'

def _log_slope(lx:np.ndarray, ly:np.ndarray):
    dx = lx - lx.mean()
    slope = np.dot(dx, ly - ly.mean()) / np.dot(dx, dx)
    return slope, ly.mean() - slope*lx.mean()

def fit_power_law(x, y, resamples:int=DefaultResamples, seed:int=0):
    '''
        Least-squares line through (log x, log y).

        @param x: at least 3 positive values, at least 2 distinct
        @param y: positive values, same length as x
        @param resamples: bootstrap resamples of the points
        @param seed: bootstrap generator seed
        @return: PowerLawFit, ci being the 2.5/97.5 percentiles of the
        bootstrap exponents (widened to hold the point estimate)
    '''
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ConfigError(f'Power-law fit got {len(x)} x values and {len(y)} y values')
    if len(x) < 3:
        raise ConfigError(f'Power-law fit needs at least 3 points, got {len(x)}')
    bad = np.flatnonzero(~((x > 0) & (y > 0)))
    if len(bad):
        i = bad[0]
        raise ConfigError(f'Power-law fit needs positive values, point {i} is ({x[i]}, {y[i]})')
    if len(np.unique(x)) < 2:
        raise ConfigError('Power-law fit needs at least 2 distinct x values')

    lx, ly = np.log(x), np.log(y)
    slope, intercept = _log_slope(lx, ly)

    rng = np.random.Generator(np.random.Philox(seed))
    n = len(x)
    boot = np.empty(resamples)
    for r in range(resamples):
        idx = rng.integers(0, n, size=n)
        while len(np.unique(lx[idx])) < 2:
            idx = rng.integers(0, n, size=n)
        boot[r], _ = _log_slope(lx[idx], ly[idx])

    if resamples > 0:
        lo, hi = np.percentile(boot, [100*(1 - Confidence)/2, 100*(1 + Confidence)/2])
        boot_mean = float(boot.mean())
    else:
        lo = hi = boot_mean = slope
    ci = (float(min(lo, slope)), float(max(hi, slope)))
    return PowerLawFit(float(slope), float(np.exp(intercept)), boot_mean, ci,
                       (float(x.min()), float(x.max())), n, resamples)

def f_statistic(chi2_fixed, chi2_null:float, n_points:int, n_params:int, n_fixed:int=1):
    '''
        F for chi2_fixed (scalar or array) against the best fit chi2_null
    '''
    if not chi2_null > 0:
        raise ConfigError(f'chi2 of the best fit must be positive, got {chi2_null}')
    if n_points <= n_params:
        raise ConfigError(f'F-test needs more points ({n_points}) than parameters ({n_params})')
    return (np.asarray(chi2_fixed, dtype=float)/chi2_null - 1.0) * (n_points - n_params) / n_fixed

@dataclass
class FTestInterval:
    best: float
    lower: float
    upper: float
    critical: float
    open_lower: bool = False
    open_upper: bool = False

    @property
    def is_open(self):
        return self.open_lower or self.open_upper

def _crossing(v0, f0, v1, f1, fcrit):
    # linear between (v0, f0) below the critical value and (v1, f1) at or above it
    if f1 == f0:
        return v1
    return v0 + (fcrit - f0) * (v1 - v0) / (f1 - f0)

def f_test_interval(best:float, chi2_null:float, n_points:int, n_params:int,
                    values, chi2_fixed, n_fixed:int=1, confidence:float=Confidence):
    '''
        Confidence interval for one parameter from its chi2 profile.

        @param best: best-fit value of the parameter
        @param values: fixed values scanned, on both sides of best
        @param chi2_fixed: chi2 of the refit at each fixed value
        @return: FTestInterval; a side the profile never crosses is set
        to the last scanned value and flagged open
    '''
    values = np.asarray(values, dtype=float)
    order = np.argsort(values)
    values = values[order]
    F = f_statistic(np.asarray(chi2_fixed, dtype=float)[order], chi2_null, n_points, n_params, n_fixed)
    fcrit = float(stats.f.ppf(confidence, n_fixed, n_points - n_params))

    below = np.flatnonzero(values < best)[::-1]
    above = np.flatnonzero(values > best)
    def scan(side, fallback):
        prev_v, prev_f = best, 0.0
        for i in side:
            if F[i] >= fcrit:
                return _crossing(prev_v, prev_f, values[i], F[i], fcrit), False
            prev_v, prev_f = values[i], F[i]
        return fallback, True

    lower, open_lower = scan(below, values[0] if len(below) else best)
    upper, open_upper = scan(above, values[-1] if len(above) else best)
    if open_lower or open_upper:
        log.warning(f'F-test profile does not cross F={fcrit:.4g} on the '
                    f'{"lower" if open_lower else "upper"} side, interval is open there')
    return FTestInterval(float(best), float(lower), float(upper), fcrit, open_lower, open_upper)

@dataclass
class FTestProfile:
    param: str
    best: float
    chi2_null: float
    n_points: int
    n_params: int
    values: np.ndarray
    chi2_fixed: np.ndarray

    def interval(self, confidence:float=Confidence):
        return f_test_interval(self.best, self.chi2_null, self.n_points, self.n_params,
                               self.values, self.chi2_fixed, 1, confidence)

def f_test_profile(x, y, model, param:str, grid, sigma=None, params=None):
    '''
        chi2 profile of param: refit the other parameters with param held
        at each grid value.

        @param model: lmfit.Model whose independent variable is x
        @param grid: fixed values of param to scan
        @param sigma: per-point uncertainties, chi2 is unweighted without
        @param params: starting Parameters, model.make_params() when None
    '''
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    weights = None if sigma is None else 1.0/np.asarray(sigma, dtype=float)
    if params is None:
        params = model.make_params()
    if param not in params:
        raise ConfigError(f"Model has no parameter '{param}', it has {', '.join(params.keys())}")
    xname = model.independent_vars[0]

    best = model.fit(y, params, weights=weights, **{xname: x})
    best_value = best.params[param].value
    chi2 = []
    for v in grid:
        p = best.params.copy()
        p[param].set(value=float(v), vary=False)
        r = model.fit(y, p, weights=weights, **{xname: x})
        chi2.append(r.chisqr)
        log.debug(f'{param}={v:.6g}: chi2={r.chisqr:.6g}')
    return FTestProfile(param, float(best_value), float(best.chisqr), int(best.ndata), int(best.nvarys),
                        np.asarray(grid, dtype=float), np.asarray(chi2))

def batch_error(values, batch:int=100):
    '''
        Standard error of the means of consecutive batches of values.
        Incomplete trailing batches are dropped; fewer than two full
        batches falls back to the plain standard error.
    '''
    values = np.asarray(values, dtype=float).ravel()
    nb = len(values) // batch
    if nb < 2:
        if len(values) < 2:
            return float('nan')
        return float(stats.sem(values))
    means = values[:nb*batch].reshape(nb, batch).mean(axis=1)
    return float(stats.sem(means))

def bootstrap_mean_ci(values, resamples:int=DefaultResamples, seed:int=0, confidence:float=Confidence):
    '''
        @return: (mean, (lo, hi)) with lo/hi percentiles of resampled means
    '''
    values = np.asarray(values, dtype=float).ravel()
    if len(values) == 0:
        raise ConfigError('Cannot bootstrap an empty sample')
    rng = np.random.Generator(np.random.Philox(seed))
    idx = rng.integers(0, len(values), size=(resamples, len(values)))
    means = values[idx].mean(axis=1)
    lo, hi = np.percentile(means, [100*(1 - confidence)/2, 100*(1 + confidence)/2])
    return float(values.mean()), (float(lo), float(hi))
