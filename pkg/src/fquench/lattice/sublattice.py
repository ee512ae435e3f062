'''
Sublattice labels for the three order parameters.

  AFM: 2 labels, (x + y) % 2 on physical sites
  Tri: 3 labels, (x - w) % 3 on logical sites (w the sheared row), 
       both physical members of a pair carry their logical label
  Vil: 4 labels, (x + y) % 4 on physical sites

All three patterns are anchored with label 0 at site (0, 0).

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import enum
import numpy as np
from fquench.errors import ConfigError
from fquench.lattice.logical import contract_to_triangular

class Scheme(enum.Enum):
    AFM = 2
    TRI = 3
    VIL = 4

    @property 
    def n_labels(self):
        return self.value

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ConfigError(f"Unknown sublattice scheme '{name}', expected afm, tri or vil")

class SublatticeMap:
    '''
        labels[i] is the sublattice of physical site i.  For TRI, 
        logical_labels holds the same labels per logical site.
    '''
    def __init__(self, scheme:Scheme, labels:np.ndarray, logical_labels:np.ndarray=None):
        self.scheme = scheme
        self.labels = labels
        self.logical_labels = logical_labels
        self.labels.setflags(write=False)
        if logical_labels is not None:
            self.logical_labels.setflags(write=False)

    @property 
    def n_labels(self):
        return self.scheme.n_labels

    def members(self, label:int, mask:np.ndarray=None):
        '''
            physical site indices carrying label, optionally restricted
            to mask
        '''
        sel = self.labels == label
        if mask is not None:
            sel = sel & mask
        return np.flatnonzero(sel)

    def counts(self):
        return np.bincount(self.labels, minlength=self.n_labels)

    def __repr__(self):
        return f'<SublatticeMap {self.scheme.name} {list(self.counts())}>'

def tri_labels(logical):
    x, w = logical.sheared_coords()
    return (x - w) % 3

def assign_sublattices(lattice, scheme, logical=None):
    '''
        Sublattice labels for scheme.

        @param lattice: physical Lattice
        @param scheme: Scheme or one of 'afm', 'tri', 'vil'
        @param logical: LogicalLattice to reuse for TRI, contracted here 
        when not given
    '''
    scheme = Scheme.parse(scheme)
    pos = lattice.positions()
    if scheme is Scheme.AFM:
        return SublatticeMap(scheme, (pos[:, 0] + pos[:, 1]) % 2)

    if scheme is Scheme.VIL:
        for name, dim in (('lx', lattice.lx), ('ly', lattice.ly)):
            if dim % 4:
                raise ConfigError(f'Vil sublattices need {name} to be a multiple of 4, got {dim}')
        return SublatticeMap(scheme, (pos[:, 0] + pos[:, 1]) % 4)

    if lattice.lx % 3:
        raise ConfigError(f'Tri sublattices need lx to be a multiple of 3, got {lattice.lx}')
    if (lattice.ly // 2) % 3:
        raise ConfigError(f'Tri sublattices need the logical height ly/2 to be a multiple of 3, got {lattice.ly // 2}')
    if logical is None:
        logical = contract_to_triangular(lattice)
    llabels = tri_labels(logical)
    return SublatticeMap(scheme, llabels[logical.physical_to_logical], llabels)

def available_schemes(lattice):
    '''
        Schemes whose divisibility rules lattice satisfies
    '''
    out = [Scheme.AFM]
    if lattice.lx >= 2 and lattice.lx % 3 == 0 and (lattice.ly // 2) % 3 == 0:
        out.append(Scheme.TRI)
    if lattice.lx % 4 == 0 and lattice.ly % 4 == 0:
        out.append(Scheme.VIL)
    return out
