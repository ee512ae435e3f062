'''
Shim controller laws.

Flux biases null the mean qubit magnetization:

    phi_i <- phi_i - d_phi <m_i>

Couplers balance frustration within each symmetry orbit O:

    J_ij <- J_ij + sign(J_ij) d_f (f_ij - f_O),   f_ij = (sign(J_ij) <s_i s_j> + 1) / 2

Anneal offsets equalise frustration across lines, mean pinned at zero:

    o_l <- o_l - d_o (f_l - mean f)

Every step is a pure function of (state, statistics); the loop itself
lives in runner.py.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from dataclasses import dataclass, field, replace
import json
import numpy as np
from fquench.errors import ConfigError
import logging
log = logging.getLogger(__name__)

ShimGains = {
    'delta_phi': 2e-6,
    'delta_f': 2.5e-3,
    'delta_o': 1e-3,
}
AnnealLines = 8

@dataclass(frozen=True)
class ShimConfig:
    delta_phi: float = ShimGains['delta_phi']
    delta_f: float = ShimGains['delta_f']
    delta_o: float = ShimGains['delta_o']
    # opt-in: a flux warm-up at a multiple of the gain, and a coupler
    # window whose exit triggers renormalisation; both off by default
    warmup_iterations: int = 0
    warmup_factor: float = 1.0
    clip: tuple = None
    n_lines: int = AnnealLines
    shim_flux: bool = True
    shim_couplers: bool = True
    shim_offsets: bool = True

    def flux_gain(self, iteration:int):
        if iteration < self.warmup_iterations:
            return self.delta_phi * self.warmup_factor
        return self.delta_phi

    def as_dict(self):
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d['clip'] = list(self.clip) if self.clip is not None else None
        return d

    @classmethod
    def from_dict(cls, d:dict):
        d = dict(d)
        if d.get('clip') is not None:
            d['clip'] = tuple(d['clip'])
        return cls(**d)

@dataclass
class ShimState:
    '''
        Controls after iteration steps of shimming.  nominal holds the
        unshimmed couplers, used to renormalise after clipping.
    '''
    iteration: int
    flux: np.ndarray
    couplers: np.ndarray
    offsets: np.ndarray
    nominal: np.ndarray = None

    def __post_init__(self):
        self.flux = np.asarray(self.flux, dtype=float)
        self.couplers = np.asarray(self.couplers, dtype=float)
        self.offsets = np.asarray(self.offsets, dtype=float)
        if self.nominal is None:
            self.nominal = self.couplers.copy()
        self.nominal = np.asarray(self.nominal, dtype=float)

    @classmethod
    def initial(cls, lattice, n_lines:int=AnnealLines, offsets=None):
        if offsets is None:
            offsets = np.zeros(n_lines)
        return cls(0, np.zeros(lattice.n_sites), lattice.couplers(), offsets)

    def copy(self):
        return ShimState(self.iteration, self.flux.copy(), self.couplers.copy(),
                         self.offsets.copy(), self.nominal.copy())

    def as_dict(self):
        return {'iteration': self.iteration, 'flux': self.flux.tolist(),
                'couplers': self.couplers.tolist(), 'offsets': self.offsets.tolist(),
                'nominal': self.nominal.tolist()}

    @classmethod
    def from_dict(cls, d:dict):
        try:
            return cls(int(d['iteration']), d['flux'], d['couplers'], d['offsets'], d.get('nominal'))
        except KeyError as e:
            raise ConfigError(f'Shim state lacks {e}')

    def to_json(self, path:str):
        with open(path, 'w') as f:
            json.dump(self.as_dict(), f)

    @classmethod
    def from_json(cls, path:str):
        with open(path, 'r') as f:
            return cls.from_dict(json.load(f))

    def equals(self, other):
        '''
            Bit-exact comparison
        '''
        return (self.iteration == other.iteration
                and np.array_equal(self.flux, other.flux)
                and np.array_equal(self.couplers, other.couplers)
                and np.array_equal(self.offsets, other.offsets))

@dataclass
class ShimStatistics:
    '''
        What one batch of reads tells the controller.
    '''
    magnetizations: np.ndarray
    frustrations: np.ndarray
    line_frustration: np.ndarray

    def as_dict(self):
        return {'magnetizations': self.magnetizations.tolist(),
                'frustrations': self.frustrations.tolist(),
                'line_frustration': self.line_frustration.tolist()}

    @classmethod
    def from_dict(cls, d:dict):
        return cls(np.asarray(d['magnetizations'], dtype=float),
                   np.asarray(d['frustrations'], dtype=float),
                   np.asarray(d['line_frustration'], dtype=float))

def anneal_lines(lattice, n_lines:int=AnnealLines):
    '''
        Anneal line of every qubit, round robin over qubit index.
    '''
    if n_lines < 1:
        raise ConfigError(f'Need at least one anneal line, got {n_lines}')
    return np.arange(lattice.n_sites, dtype=np.int64) % n_lines

def line_couplers(lattice, lines:np.ndarray, n_lines:int=AnnealLines):
    '''
        Bond indices touching each line; a bond belongs to the lines of
        both its ends.
    '''
    a, b = lattice.bonds.endpoints()
    out = []
    for l in range(n_lines):
        out.append(np.flatnonzero((lines[a] == l) | (lines[b] == l)))
    return out

def frustration_probability(samples, bonds, couplers=None):
    '''
        f = (sign(J) <s_i s_j> + 1) / 2 for one Bond or a list of them.

        @param couplers: signs taken from these values (bond order)
        rather than from the bonds themselves
    '''
    single = not isinstance(bonds, (list, tuple))
    bonds = [bonds] if single else list(bonds)
    a = np.array([b.a for b in bonds], dtype=np.int64)
    b = np.array([b.b for b in bonds], dtype=np.int64)
    if couplers is None:
        signs = np.sign([bd.value for bd in bonds])
    else:
        signs = np.sign(np.asarray(couplers, dtype=float)[[bd.index for bd in bonds]])
    f = (signs * samples.correlations(a, b) + 1.0) / 2.0
    return float(f[0]) if single else f

def measure(samples, lattice, couplers, lines, orbits=None, n_lines:int=AnnealLines):
    '''
        ShimStatistics of a batch of reads.

        line_frustration is the per-line mean of f_ij - f_O when orbits
        are given, of f_ij otherwise.
    '''
    a, b = lattice.bonds.endpoints()
    f = (np.sign(couplers) * samples.correlations(a, b) + 1.0) / 2.0
    dev = f - orbits.orbit_means(f)[orbits.orbit_of] if orbits is not None else f
    per_line = np.array([dev[idx].mean() if len(idx) else 0.0
                         for idx in line_couplers(lattice, lines, n_lines)])
    return ShimStatistics(samples.magnetizations(), f, per_line)

def flux_shim_step(state:ShimState, mean_magnetizations, delta_phi:float=ShimGains['delta_phi']):
    m = np.asarray(mean_magnetizations, dtype=float)
    if m.shape != state.flux.shape:
        raise ConfigError(f'Need {len(state.flux)} magnetizations, got {m.shape}')
    return replace(state, flux=state.flux - delta_phi*m)

def normalize_couplers(couplers:np.ndarray, nominal:np.ndarray, clip:tuple):
    '''
        Clip to clip, then scale positive and negative couplers so their
        means return to the nominal means; positives are clipped again.
    '''
    lo, hi = clip
    J = np.clip(couplers, lo, hi)
    pos, neg = nominal > 0, nominal < 0
    if pos.any():
        J[pos] *= nominal[pos].mean() / J[pos].mean()
    if neg.any():
        J[neg] *= nominal[neg].mean() / J[neg].mean()
    return np.clip(J, lo, hi)

def coupler_shim_step(state:ShimState, frustrations, orbits, delta_f:float=ShimGains['delta_f'], clip:tuple=None):
    '''
        @param orbits: OrbitPartition covering every bond
        @param clip: (lo, hi); leaving it triggers renormalisation
    '''
    f = np.asarray(frustrations, dtype=float)
    if f.shape != state.couplers.shape:
        raise ConfigError(f'Need {len(state.couplers)} frustrations, got {f.shape}')
    if np.any(orbits.orbit_of < 0):
        raise ConfigError('Orbit partition does not cover every bond')
    sign = np.sign(state.couplers)
    J = state.couplers + sign * delta_f * (f - orbits.orbit_means(f)[orbits.orbit_of])
    flipped = np.sign(J) != sign
    if np.any(flipped):
        log.warning(f'Holding {int(flipped.sum())} coupler(s) that would cross zero')
        J = np.where(flipped, state.couplers, J)
    if clip is not None and (np.any(J < clip[0]) or np.any(J > clip[1])):
        log.warning(f'Couplers left {clip}, renormalising')
        J = normalize_couplers(J, state.nominal, clip)
    return replace(state, couplers=J)

def offset_shim_step(state:ShimState, per_line_frustration, delta_o:float=ShimGains['delta_o']):
    f = np.asarray(per_line_frustration, dtype=float)
    if f.shape != state.offsets.shape:
        raise ConfigError(f'Need {len(state.offsets)} line frustrations, got {f.shape}')
    o = state.offsets - delta_o * (f - f.mean())
    return replace(state, offsets=o - o.mean())

def apply_statistics(state:ShimState, stats:ShimStatistics, orbits, config:ShimConfig):
    '''
        One controller iteration: the enabled steps in the order flux,
        couplers, offsets, then the iteration count advances.
    '''
    if config.shim_flux:
        state = flux_shim_step(state, stats.magnetizations, config.flux_gain(state.iteration))
    if config.shim_couplers:
        state = coupler_shim_step(state, stats.frustrations, orbits, config.delta_f, config.clip)
    if config.shim_offsets:
        state = offset_shim_step(state, stats.line_frustration, config.delta_o)
    return replace(state, iteration=state.iteration + 1)
