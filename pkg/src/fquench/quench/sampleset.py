'''
Measured spin configurations.

File layout: the first line is JSON metadata (lx, ly, j1, j2, model,
t_a, seed, reads, ...), then one read per line as space-separated +-1
in site order (index x*ly + y).

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import json
import numpy as np
from fquench.errors import ConfigError
from fquench.quench.state import StateVector, spins_of
from fquench.lattice import build_cylinder, build_column
import logging
log = logging.getLogger(__name__)

class SampleSet:
    '''
        reads is an (n_reads, n_sites) int8 array of +-1.

        samples = SampleSet.read('samples_ta8.txt')
        samples.magnetizations()
        samples.lattice()
    '''
    def __init__(self, reads, metadata:dict=None):
        reads = np.atleast_2d(np.asarray(reads)).astype(np.int8)
        if reads.size == 0:
            raise ConfigError('A SampleSet needs at least one read')
        bad = (reads != 1) & (reads != -1)
        if np.any(bad):
            r, c = np.argwhere(bad)[0]
            raise ConfigError(f'Read {r} has value {reads[r, c]} at site {c}, spins must be +-1')
        self.reads = reads
        self.reads.setflags(write=False)
        self.metadata = dict(metadata or {})
        self.metadata['reads'] = int(reads.shape[0])
        if 'lx' in self.metadata and 'ly' in self.metadata:
            expected = int(self.metadata['lx']) * int(self.metadata['ly'])
            if expected != reads.shape[1]:
                raise ConfigError(f'Reads have {reads.shape[1]} sites, metadata says {expected}')

    @property
    def n_reads(self):
        return self.reads.shape[0]

    @property
    def n_sites(self):
        return self.reads.shape[1]

    @property
    def t_a(self):
        return self.metadata.get('t_a', None)

    def magnetizations(self):
        return self.reads.mean(axis=0, dtype=float)

    def correlations(self, a, b):
        '''
            Read-averaged s_a s_b for index arrays a and b
        '''
        r = self.reads.astype(np.int32)
        return np.mean(r[:, a] * r[:, b], axis=0)

    def batches(self, size:int):
        '''
            Split into consecutive SampleSets of size reads, the last
            one possibly shorter.
        '''
        return [SampleSet(self.reads[i:i+size], self.metadata)
                for i in range(0, self.n_reads, size)]

    def lattice(self):
        '''
            Rebuild the lattice described by the metadata
        '''
        md = self.metadata
        try:
            if int(md['lx']) == 1:
                return build_column(int(md['ly']), float(md['j1']))
            return build_cylinder(int(md['lx']), int(md['ly']), float(md['j1']), float(md['j2']),
                                  md.get('model', None), bool(md.get('periodic_x', False)))
        except KeyError as e:
            raise ConfigError(f'SampleSet metadata has no {e} entry, cannot rebuild the lattice')

    def write(self, path:str):
        with open(path, 'w') as f:
            f.write(json.dumps(self.metadata, sort_keys=True))
            f.write('\n')
            np.savetxt(f, self.reads, fmt='%d', delimiter=' ')
        log.info(f'Wrote {self.n_reads} reads to {path}')

    @classmethod
    def read(cls, path:str):
        with open(path, 'r') as f:
            header = f.readline()
            try:
                metadata = json.loads(header)
            except json.JSONDecodeError as e:
                raise ConfigError(f"'{path}' does not start with a JSON metadata line: {e}")
            reads = np.loadtxt(f, dtype=np.int8, ndmin=2)
        log.info(f'Read {len(reads)} reads from {path}')
        return cls(reads, metadata)

    def __len__(self):
        return self.n_reads

    def __repr__(self):
        return f'<SampleSet {self.n_reads} reads x {self.n_sites} sites t_a={self.t_a}>'

def sample(state:StateVector, reads:int, seed:int, lattice=None, metadata:dict=None):
    '''
        Draw reads basis states from |amplitude|^2.

        Uses a Philox (counter-based) generator keyed on seed, so the
        same seed always gives the same reads.
    '''
    if reads < 1:
        raise ConfigError(f'reads must be at least 1, got {reads}')
    rng = np.random.Generator(np.random.Philox(seed))
    cdf = np.cumsum(state.probabilities())
    cdf /= cdf[-1]
    u = rng.random(reads)
    idx = np.minimum(np.searchsorted(cdf, u, side='right'), state.dim - 1)
    md = dict(metadata or {})
    if lattice is not None:
        md.update(lattice.metadata())
    md['seed'] = int(seed)
    return SampleSet(spins_of(idx, state.n_qubits), md)
