'''
Order parameters from sublattice magnetizations.

  AFM:  m = (m_0 - m_1) / 2
  Tri:  m = (m_0 + w m_1 + w^2 m_2) / sqrt(3),  w = exp(2 pi i / 3)
  Vil:  m = (1/2) sum_j exp(i pi (2j + 1) / 8) m_j

m_j is the mean spin on sublattice j of one read.  Only magnitudes are
reported; relabelling the sublattices changes phases, not magnitudes.

    result = order_parameters(samples, ['afm', 'tri'])
    result.mean('tri'), result.error('tri')

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import math
import numpy as np
from fquench.errors import ConfigError
from fquench.lattice import Scheme, SublatticeMap, assign_sublattices, boundary_mask
from fquench.analysis.fitting import batch_error
import logging
log = logging.getLogger(__name__)

Omega = np.exp(2j*math.pi/3)
VilPhases = np.exp(1j*math.pi*(2*np.arange(4) + 1)/8)

# largest |m| over all corner configurations of the sublattice magnetizations
MaxMagnitude = {
    Scheme.AFM: 1.0,
    Scheme.TRI: 2.0/math.sqrt(3.0),
    Scheme.VIL: math.cos(math.pi/8) + math.cos(3*math.pi/8),
}

def sublattice_magnetizations(reads:np.ndarray, smap:SublatticeMap, mask:np.ndarray=None):
    '''
        (n_reads, n_labels) mean spin per sublattice per read
    '''
    reads = np.atleast_2d(reads).astype(float)
    out = np.empty((reads.shape[0], smap.n_labels))
    for label in range(smap.n_labels):
        members = smap.members(label, mask)
        if len(members) == 0:
            raise ConfigError(f'Sublattice {label} of {smap.scheme.name} has no sites left')
        out[:, label] = reads[:, members].mean(axis=1)
    return out

def combine(scheme:Scheme, m:np.ndarray):
    '''
        Complex order parameter from sublattice magnetizations (..., n_labels)
    '''
    m = np.asarray(m, dtype=float)
    if scheme is Scheme.AFM:
        return 0.5*(m[..., 0] - m[..., 1]) + 0j
    if scheme is Scheme.TRI:
        return (m[..., 0] + Omega*m[..., 1] + Omega**2*m[..., 2]) / math.sqrt(3.0)
    return 0.5*(m @ VilPhases)

class OrderParamResult:
    '''
        Per-read complex order parameters, keyed by scheme name
        ('afm', 'tri', 'vil').
    '''
    def __init__(self, values:dict, sublattice_m:dict, batch:int=100):
        self._values = values
        self._sub = sublattice_m
        self._batch = batch

    def schemes(self):
        return list(self._values.keys())

    def __contains__(self, name):
        return Scheme.parse(name).name.lower() in self._values

    def _key(self, name):
        key = Scheme.parse(name).name.lower()
        if key not in self._values:
            raise KeyError(f"No {key} order parameter, have {', '.join(self._values)}")
        return key

    def per_read(self, name):
        return self._values[self._key(name)]

    def magnitudes(self, name):
        return np.abs(self.per_read(name))

    def sublattice(self, name):
        return self._sub[self._key(name)]

    def mean(self, name):
        return float(self.magnitudes(name).mean())

    def error(self, name):
        return batch_error(self.magnitudes(name), self._batch)

    @property
    def m_afm(self):
        return self.mean('afm') if 'afm' in self else None

    @property
    def m_tri(self):
        return self.mean('tri') if 'tri' in self else None

    @property
    def m_vil(self):
        return self.mean('vil') if 'vil' in self else None

    def summary(self):
        out = dict()
        for key in self._values:
            out[f'm_{key}'] = self.mean(key)
            out[f'm_{key}_err'] = self.error(key)
        return out

    def __repr__(self):
        inner = ', '.join(f'{k}={self.mean(k):.4f}' for k in self._values)
        return f'<OrderParamResult {inner}>'

def order_parameters(samples, maps, exclude_boundary:int=0, lattice=None, batch:int=100):
    '''
        Order parameters per read.

        @param samples: SampleSet
        @param maps: iterable of SublatticeMap, Scheme or scheme names;
        names are resolved against lattice
        @param exclude_boundary: drop this many columns at each open edge
        @param lattice: defaults to samples.lattice()
        @param batch: reads per batch for the error bars
        @return: OrderParamResult
    '''
    if lattice is None and (exclude_boundary or any(not isinstance(m, SublatticeMap) for m in maps)):
        lattice = samples.lattice()
    resolved = []
    for m in maps:
        if not isinstance(m, SublatticeMap):
            m = assign_sublattices(lattice, m)
        if len(m.labels) != samples.n_sites:
            raise ConfigError(f'{m.scheme.name} map covers {len(m.labels)} sites, reads have {samples.n_sites}')
        resolved.append(m)

    mask = boundary_mask(lattice, exclude_boundary) if exclude_boundary else None
    values = dict()
    sub = dict()
    for smap in resolved:
        key = smap.scheme.name.lower()
        sub[key] = sublattice_magnetizations(samples.reads, smap, mask)
        values[key] = combine(smap.scheme, sub[key])
        log.debug(f'{key}: <|m|> = {np.abs(values[key]).mean():.4f} over {samples.n_reads} reads')
    return OrderParamResult(values, sub, batch)
