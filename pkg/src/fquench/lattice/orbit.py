'''
Symmetry orbits of couplers, used by shimming.

Bonds in the same column, of the same kind and coupling class, at rows 
of equal parity are related by a vertical translation of 2 and share an 
orbit.  When J1 == J2 a translation by one row is also a symmetry and 
the parity is dropped, so a uniform ring is a single orbit.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import numpy as np
from fquench.collection import NamedElementCollection
from fquench.lattice.bond import VERTICAL
import logging
log = logging.getLogger(__name__)

class Orbit:
    def __init__(self, name:str, key:tuple, members:list):
        self.name = name 
        self.key = key
        self.members = members

    @property 
    def size(self):
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f'<Orbit {self.name} {len(self.members)} bonds>'

class OrbitPartition(NamedElementCollection):
    '''
        orbits = compute_orbits(lattice)
        for orbit in orbits:
            orbit.members
        orbits.v_x0_even.members
        orbits.orbit_of[bond_index]
    '''
    def __init__(self, parent, orbits:list, n_bonds:int):
        super().__init__(parent, orbits, lambda o: o.name)
        self.orbit_of = np.full(n_bonds, -1, dtype=np.int64)
        for i, orbit in enumerate(orbits):
            self.orbit_of[orbit.members] = i
        self.orbit_of.setflags(write=False)

    def sizes(self):
        return np.array([len(o) for o in self], dtype=np.int64)

    def orbit_means(self, per_bond:np.ndarray):
        '''
            Mean of a per-bond quantity over each orbit
        '''
        per_bond = np.asarray(per_bond, dtype=float)
        sums = np.bincount(self.orbit_of, weights=per_bond, minlength=len(self))
        return sums / self.sizes()

    def spread(self, per_bond:np.ndarray):
        '''
            max - min of per_bond within each orbit
        '''
        per_bond = np.asarray(per_bond, dtype=float)
        return np.array([np.ptp(per_bond[o.members]) for o in self])

def _orbit_key(bond, uniform:bool):
    if uniform:
        return (bond.kind, bond.column, None, None)
    return (bond.kind, bond.column, bond.row % 2, bond.coupling_class)

def _orbit_name(key):
    kind, column, parity, _ = key
    name = f"{'v' if kind == VERTICAL else 'h'}_x{column}"
    if parity is not None:
        name += '_even' if parity == 0 else '_odd'
    return name

def compute_orbits(lattice):
    '''
        Partition all bonds into orbits.

        @return: OrbitPartition, orbits ordered by first member
    '''
    uniform = lattice.j1 == lattice.j2
    groups = dict()
    for bond in lattice.bonds:
        groups.setdefault(_orbit_key(bond, uniform), []).append(bond.index)
    orbits = [Orbit(_orbit_name(k), k, members) for k, members in groups.items()]
    log.debug(f'{len(orbits)} orbits over {lattice.n_bonds} bonds')
    return OrbitPartition(lattice, orbits, lattice.n_bonds)
