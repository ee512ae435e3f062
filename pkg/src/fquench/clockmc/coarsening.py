'''
Coarsening runs of the absorbing clock dynamics.

    result = run_coarsening(l=120, replicas=100, steps=1000, seed=7, workers=8)
    result.exponents(window=(10, 300))
    result.to_frame().to_csv('coarsening.csv')

Replica k uses the k-th child of SeedSequence(seed), so results do not
depend on how replicas are spread over workers.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from dataclasses import dataclass, field
from functools import partial
import multiprocessing as mp
import warnings
import numpy as np
import pandas as pd
from tqdm import tqdm
from fquench.errors import ConfigError, NumericalError
from fquench.analysis.fitting import fit_power_law
from fquench.clockmc.honeycomb import HoneycombLattice
from fquench.clockmc.dynamics import random_config, sweep, energy, magnetization, domain_defects
import logging
log = logging.getLogger(__name__)

MCDefaults = {
    'l': 120,
    'replicas': 100,
    'steps': 1000,
    'max_distance': 20,
    'fit_range': (5, 20),
    'window': (10, 300),
    'resamples': 200,
}

def replica_seeds(master:int, n:int):
    '''
        Independent per-replica seeds: SeedSequence(master).spawn(n)
    '''
    return np.random.SeedSequence(master).spawn(n)

def distance_bins(l:int, max_distance:int):
    '''
        For each displacement on the periodic l x l grid, the rounded
        minimum-image euclidean distance.
    '''
    k = np.arange(l)
    d = np.minimum(k, l - k)
    r = np.rint(np.sqrt(d[:, None]**2 + d[None, :]**2)).astype(np.int64)
    if max_distance > r.max():
        raise ConfigError(f'max_distance={max_distance} exceeds the largest distance {r.max()} on l={l}')
    return r

def correlation_function(angles:np.ndarray, bins:np.ndarray, max_distance:int):
    '''
        C(r) = mean of cos(theta_i - theta_j) over pairs at distance r,
        r = 1..max_distance, via FFT autocorrelation.
    '''
    z = np.exp(1j*angles)
    fz = np.fft.fft2(z)
    auto = np.fft.ifft2(np.abs(fz)**2).real / z.size
    sums = np.bincount(bins.ravel(), weights=auto.ravel(), minlength=max_distance + 1)
    counts = np.bincount(bins.ravel(), minlength=max_distance + 1)
    return sums[1:max_distance + 1] / counts[1:max_distance + 1]

def fit_correlation_length(corr:np.ndarray, fit_range=(5, 20)):
    '''
        xi from C(r) ~ A exp(-r / xi) fitted in log space over fit_range.

        @param corr: (..., max_distance) with corr[..., r-1] = C(r)
        @return: xi with shape corr.shape[:-1], NaN where fewer than two
        positive points are left or the decay is not downward
    '''
    corr = np.asarray(corr, dtype=float)
    lo, hi = fit_range
    r = np.arange(lo, hi + 1, dtype=float)
    c = corr[..., lo - 1:hi]
    valid = c > 0
    logc = np.log(np.where(valid, c, 1.0))
    n = valid.sum(axis=-1)
    sx = np.sum(np.where(valid, r, 0), axis=-1)
    sy = np.sum(np.where(valid, logc, 0), axis=-1)
    sxx = np.sum(np.where(valid, r*r, 0), axis=-1)
    sxy = np.sum(np.where(valid, r*logc, 0), axis=-1)
    with np.errstate(divide='ignore', invalid='ignore'):
        slope = (n*sxy - sx*sy) / (n*sxx - sx*sx)
        xi = -1.0 / slope
    return np.where((n >= 2) & (slope < 0), xi, np.nan)

def _run_replica(seed_seq, l:int, steps:int, max_distance:int, check_energy:bool=True):
    lattice = HoneycombLattice(l)
    bins = distance_bins(l, max_distance)
    rng = np.random.Generator(np.random.Philox(seed_seq))
    config = random_config(lattice, rng, seed_seq.entropy)

    m = np.empty(steps + 1)
    corr = np.empty((steps + 1, max_distance))
    energies = np.empty(steps + 1)
    defects = np.empty(steps + 1, dtype=np.int64)
    def observe(t):
        m[t] = magnetization(config)
        corr[t] = correlation_function(config.angles.reshape(l, l), bins, max_distance)
        energies[t] = energy(config, lattice)
        defects[t] = sum(domain_defects(config, lattice))

    observe(0)
    for t in range(1, steps + 1):
        sweep(config, lattice, rng)
        observe(t)
        if check_energy and energies[t] > energies[t-1]:
            raise NumericalError(f'Energy rose from {energies[t-1]} to {energies[t]} at step {t}')
    return m, corr, energies, defects

def _bootstrap_weights(n:int, resamples:int, rng:np.random.Generator):
    idx = rng.integers(0, n, size=(resamples, n))
    return np.stack([np.bincount(row, minlength=n) for row in idx]) / n

@dataclass
class CoarseningResult:
    l: int
    seed: int
    steps: np.ndarray
    m: np.ndarray
    corr: np.ndarray
    energies: np.ndarray
    defects: np.ndarray
    fit_range: tuple = (5, 20)
    resamples: int = 200
    m_mean: np.ndarray = field(init=False)
    m_ci: np.ndarray = field(init=False)
    xi: np.ndarray = field(init=False)
    xi_ci: np.ndarray = field(init=False)

    def __post_init__(self):
        n_rep = self.m.shape[0]
        self.m_mean = self.m.mean(axis=0)
        self.xi = fit_correlation_length(self.corr.mean(axis=0), self.fit_range)

        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(self.seed).spawn(n_rep + 1)[-1]))
        w = _bootstrap_weights(n_rep, self.resamples, rng)
        m_boot = w @ self.m
        c_boot = (w @ self.corr.reshape(n_rep, -1)).reshape((self.resamples,) + self.corr.shape[1:])
        xi_boot = fit_correlation_length(c_boot, self.fit_range)
        self.m_ci = np.percentile(m_boot, [2.5, 97.5], axis=0)
        with warnings.catch_warnings():
            # all-NaN columns (no decay yet) stay NaN
            warnings.simplefilter('ignore', RuntimeWarning)
            self.xi_ci = np.nanpercentile(xi_boot, [2.5, 97.5], axis=0)

    @property
    def replicas(self):
        return self.m.shape[0]

    @property
    def corr_mean(self):
        return self.corr.mean(axis=0)

    @property
    def defect_density(self):
        return self.defects.mean(axis=0) / (self.l * self.l / 2)

    def exponents(self, window=(10, 300), resamples:int=200):
        '''
            Power-law fits of <m> and xi against step over window.

            @return: dict with 'm' and 'xi' PowerLawFits
        '''
        lo, hi = window
        sel = (self.steps >= lo) & (self.steps <= hi)
        if sel.sum() < 3:
            raise ConfigError(f'Window {window} holds fewer than 3 steps')
        out = {'m': fit_power_law(self.steps[sel], self.m_mean[sel], resamples, self.seed)}
        good = sel & np.isfinite(self.xi) & (self.xi > 0)
        if good.sum() >= 3:
            out['xi'] = fit_power_law(self.steps[good], self.xi[good], resamples, self.seed)
        else:
            log.warning(f'Not enough finite correlation lengths in window {window} to fit')
            out['xi'] = None
        return out

    def to_frame(self, first_step:int=1):
        sel = self.steps >= first_step
        return pd.DataFrame({
            'step': self.steps[sel],
            'm_mean': self.m_mean[sel],
            'm_ci_lo': self.m_ci[0][sel],
            'm_ci_hi': self.m_ci[1][sel],
            'xi': self.xi[sel],
            'xi_ci_lo': self.xi_ci[0][sel],
            'xi_ci_hi': self.xi_ci[1][sel],
        })

def run_coarsening(l:int=120, replicas:int=100, steps:int=1000, seed:int=0, workers:int=1,
                   max_distance:int=20, fit_range=(5, 20), resamples:int=200, progress:bool=True):
    '''
        Run independent replicas from random starts.

        @param l: honeycomb linear size, even
        @param replicas: number of independent runs
        @param steps: time steps per run; step 0 is the random start
        @param workers: process pool size, 1 runs in-process
        @return: CoarseningResult with per-replica series and averages
    '''
    if l % 2:
        raise ConfigError(f'l={l} must be even')
    if replicas < 1:
        raise ConfigError(f'replicas must be at least 1, got {replicas}')
    if steps < 0:
        raise ConfigError(f'steps must not be negative, got {steps}')
    max_distance = min(max_distance, int(distance_bins(l, 1).max()))
    if fit_range[1] > max_distance:
        fit_range = (min(fit_range[0], max_distance - 1), max_distance)
        log.warning(f'Lattice l={l} too small for the configured fit range, using {fit_range}')

    seeds = replica_seeds(seed, replicas)
    job = partial(_run_replica, l=l, steps=steps, max_distance=max_distance)
    log.info(f'Coarsening l={l}, {replicas} replicas x {steps} steps on {workers} worker(s)')
    if workers > 1:
        with mp.Pool(workers) as pool:
            results = list(tqdm(pool.imap(job, seeds), total=replicas, disable=not progress, desc='replicas'))
    else:
        results = [job(s) for s in tqdm(seeds, disable=not progress, desc='replicas')]

    m, corr, energies, defects = (np.stack(x) for x in zip(*results))
    return CoarseningResult(l, seed, np.arange(steps + 1), m, corr, energies, defects,
                            tuple(fit_range), resamples)
