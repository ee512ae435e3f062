'''
Annealing schedules (Gamma(s), J(s)) for s in [0, 1].

    sched = default_schedule()
    gamma, jcal = sched.evaluate(0.25)

    sched = load_schedule('path/to/schedule.csv')   # header s,gamma,jcal

Values between knots are linearly interpolated.  After loading,
Gamma(0) = J(1) = 1 and Gamma(1) = J(0) = 0.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import numpy as np
import pandas as pd
from fquench.errors import ConfigError
import logging
log = logging.getLogger(__name__)

# endpoint values this close to zero are snapped to it
EndpointTolerance = 1e-3
DefaultKnots = 1001

class Schedule:
    def __init__(self, s, gamma, jcal, name:str='custom'):
        self._s = np.array(s, dtype=float)
        self._gamma = np.array(gamma, dtype=float)
        self._jcal = np.array(jcal, dtype=float)
        self.name = name
        for arr in (self._s, self._gamma, self._jcal):
            arr.setflags(write=False)

    @property
    def knots(self):
        '''
            (n, 3) array of (s, gamma, jcal)
        '''
        return np.stack([self._s, self._gamma, self._jcal], axis=1)

    @property
    def s(self):
        return self._s

    def _check_s(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s < 0) or np.any(s > 1) or np.any(np.isnan(s)):
            raise ConfigError(f'Schedule evaluated outside [0, 1]: {s}')
        return s

    def gamma(self, s):
        return np.interp(self._check_s(s), self._s, self._gamma)

    def jcal(self, s):
        return np.interp(self._check_s(s), self._s, self._jcal)

    def evaluate(self, s:float):
        '''
            (gamma, jcal) at s, linear between knots and exact on them
        '''
        s = self._check_s(s)
        g = np.interp(s, self._s, self._gamma)
        j = np.interp(s, self._s, self._jcal)
        if s.ndim == 0:
            return float(g), float(j)
        return g, j

    def to_csv(self, path:str):
        pd.DataFrame({'s': self._s, 'gamma': self._gamma, 'jcal': self._jcal}).to_csv(path, index=False)
        log.info(f'Wrote schedule {self.name} to {path}')

    def __repr__(self):
        return f'<Schedule {self.name} {len(self._s)} knots>'

def default_schedule():
    '''
        Gamma = cos^2(pi s / 2), J = sin^2(pi s / 2) on 1001 knots
    '''
    s = np.linspace(0.0, 1.0, DefaultKnots)
    gamma = np.cos(np.pi * s / 2)**2
    jcal = np.sin(np.pi * s / 2)**2
    gamma[-1] = 0.0
    jcal[0] = 0.0
    return Schedule(s, gamma, jcal, 'default')

def linear_schedule():
    return Schedule([0.0, 1.0], [1.0, 0.0], [0.0, 1.0], 'linear')

def _row(i:int):
    # header is line 1
    return i + 2

def load_schedule(path:str):
    '''
        Read a schedule CSV with columns s, gamma, jcal.

        s must run strictly increasing from 0 to 1, values must be
        non-negative, gamma non-increasing and jcal non-decreasing.
        gamma is divided by gamma(0) and jcal by jcal(1).

        @note: errors name the offending line of the file
    '''
    try:
        df = pd.read_csv(path, skipinitialspace=True)
    except FileNotFoundError:
        raise ConfigError(f"Schedule file '{path}' does not exist")
    except Exception as e:
        raise ConfigError(f"Could not read schedule '{path}': {e}")

    df.columns = [str(c).strip().lower() for c in df.columns]
    missing = [c for c in ('s', 'gamma', 'jcal') if c not in df.columns]
    if missing:
        raise ConfigError(f"Schedule '{path}' lacks column(s) {', '.join(missing)}")
    if len(df) < 2:
        raise ConfigError(f"Schedule '{path}' needs at least two rows")

    try:
        s = df['s'].to_numpy(dtype=float)
        gamma = df['gamma'].to_numpy(dtype=float)
        jcal = df['jcal'].to_numpy(dtype=float)
    except ValueError as e:
        raise ConfigError(f"Schedule '{path}' has non-numeric entries: {e}")

    for name, col in (('s', s), ('gamma', gamma), ('jcal', jcal)):
        bad = np.flatnonzero(np.isnan(col) | (col < 0))
        if len(bad):
            raise ConfigError(f"Schedule '{path}' row {_row(bad[0])}: {name}={col[bad[0]]} must be a non-negative number")

    steps = np.diff(s)
    bad = np.flatnonzero(steps <= 0)
    if len(bad):
        raise ConfigError(f"Schedule '{path}' row {_row(bad[0] + 1)}: s={s[bad[0]+1]} does not increase")
    if s[0] != 0.0:
        raise ConfigError(f"Schedule '{path}' row {_row(0)}: s must start at 0, got {s[0]}")
    if s[-1] != 1.0:
        raise ConfigError(f"Schedule '{path}' row {_row(len(s)-1)}: s must end at 1, got {s[-1]}")

    bad = np.flatnonzero(np.diff(gamma) > 0)
    if len(bad):
        raise ConfigError(f"Schedule '{path}' row {_row(bad[0] + 1)}: gamma increases")
    bad = np.flatnonzero(np.diff(jcal) < 0)
    if len(bad):
        raise ConfigError(f"Schedule '{path}' row {_row(bad[0] + 1)}: jcal decreases")

    if gamma[0] <= 0:
        raise ConfigError(f"Schedule '{path}' row {_row(0)}: gamma(0) must be positive")
    if jcal[-1] <= 0:
        raise ConfigError(f"Schedule '{path}' row {_row(len(s)-1)}: jcal(1) must be positive")

    if gamma[0] != 1.0 or jcal[-1] != 1.0:
        log.info(f'Normalising schedule {path}: gamma(0)={gamma[0]}, jcal(1)={jcal[-1]}')
    gamma = gamma / gamma[0]
    jcal = jcal / jcal[-1]

    if gamma[-1] > EndpointTolerance:
        raise ConfigError(f"Schedule '{path}' row {_row(len(s)-1)}: gamma(1)={gamma[-1]} must be 0")
    if jcal[0] > EndpointTolerance:
        raise ConfigError(f"Schedule '{path}' row {_row(0)}: jcal(0)={jcal[0]} must be 0")
    gamma[-1] = 0.0
    jcal[0] = 0.0

    return Schedule(s, gamma, jcal, name=str(path))
