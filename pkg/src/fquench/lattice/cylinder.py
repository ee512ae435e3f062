'''
The physical lattice: an lx x ly square lattice, periodic along y
(a cylinder), with the J1/J2 coupler pattern.

Site (x, y) has index x*ly + y, y fastest.

Vertical bond (x,y)-(x,y+1) carries J2 when (x+y) is even, J1
otherwise, so every square plaquette holds exactly one J2 bond.
Horizontal bonds all carry J1.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import re
import numpy as np
from fquench.collection import ElementCollection
from fquench.errors import ConfigError
from fquench.lattice.site import Site, Location
from fquench.lattice.bond import Bond, BondCollection, VERTICAL, HORIZONTAL
from fquench.model_template import model_kind_for
from fquench.sexp.sourcefile import SourceFile
import logging
log = logging.getLogger(__name__)

class Lattice:
    '''
        Cylinder lattice with signed couplers.

        lat = build_cylinder(4, 4, 0.9, -0.9)
        lat.n_sites, lat.n_bonds
        for bond in lat.bonds.vertical:
            ...
        lat.bonds.between(0, 1).value

        Treat as immutable once built: with_couplers() hands back
        a modified copy.
    '''
    def __init__(self, lx:int, ly:int, j1:float, j2:float, model_kind:str,
                 bonds:list, periodic_x:bool=False):
        self._lx = lx
        self._ly = ly
        self._j1 = j1
        self._j2 = j2
        self._model_kind = model_kind
        self._periodic_x = periodic_x
        self._sites = ElementCollection(self,
                        [Site(x*ly + y, x, y, ly) for x in range(lx) for y in range(ly)])
        self._bonds = BondCollection(self, bonds)
        self._neighbors = None

    @property
    def lx(self):
        return self._lx

    @property
    def ly(self):
        return self._ly

    @property
    def j1(self):
        return self._j1

    @property
    def j2(self):
        return self._j2

    @property
    def model_kind(self):
        return self._model_kind

    @property
    def periodic_x(self):
        return self._periodic_x

    @property
    def sites(self):
        return self._sites

    @property
    def bonds(self):
        return self._bonds

    @property
    def n_sites(self):
        return self._lx * self._ly

    @property
    def n_bonds(self):
        return len(self._bonds)

    def site_index(self, x:int, y:int):
        if self._periodic_x:
            x = x % self._lx
        if x < 0 or x >= self._lx:
            raise IndexError(f'Column {x} outside 0..{self._lx-1}')
        return x*self._ly + (y % self._ly)

    def coords(self, index:int):
        return divmod(index, self._ly)

    def positions(self):
        '''
            (n_sites, 2) array of (x, y)
        '''
        idx = np.arange(self.n_sites)
        return np.stack([idx // self._ly, idx % self._ly], axis=1)

    def neighbors(self, index:int):
        if self._neighbors is None:
            nbrs = [[] for _ in range(self.n_sites)]
            for bond in self._bonds:
                nbrs[bond.a].append(bond.b)
                nbrs[bond.b].append(bond.a)
            self._neighbors = nbrs
        return list(self._neighbors[index])

    def bond_index(self, a:int, b:int):
        bond = self._bonds.between(a, b)
        if bond is None:
            raise KeyError(f'No bond between {a} and {b}')
        return bond.index

    def couplers(self):
        return self._bonds.values()

    def plaquettes(self):
        '''
            Square plaquettes as a list of (corners, bond indices).
            corners go (x,y), (x,y+1), (x+1,y+1), (x+1,y); bonds are
            left, top, right, bottom.
        '''
        plaqs = []
        ncols = self._lx if self._periodic_x else self._lx - 1
        if self._lx == 1:
            return plaqs
        for x in range(ncols):
            for y in range(self._ly):
                c = [self.site_index(x, y), self.site_index(x, y+1),
                     self.site_index(x+1, y+1), self.site_index(x+1, y)]
                bonds = [self.bond_index(c[0], c[1]), self.bond_index(c[1], c[2]),
                         self.bond_index(c[3], c[2]), self.bond_index(c[0], c[3])]
                plaqs.append((c, bonds))
        return plaqs

    def with_couplers(self, values):
        '''
            Copy of this lattice with bond values replaced, in bond order.
            Geometry and coupling classes are kept.
        '''
        values = np.asarray(values, dtype=float)
        if values.shape != (self.n_bonds,):
            raise ConfigError(f'Need {self.n_bonds} coupler values, got {values.shape}')
        bonds = []
        for bond, v in zip(self._bonds, values):
            bonds.append(Bond(bond.index, bond.a, bond.b, float(v), bond.kind,
                              bond.column, bond.row, bond.coupling_class, bond.location))
        return Lattice(self._lx, self._ly, self._j1, self._j2, self._model_kind,
                       bonds, self._periodic_x)

    def metadata(self):
        return {'lx': self._lx, 'ly': self._ly, 'j1': self._j1, 'j2': self._j2,
                'model': self._model_kind, 'periodic_x': self._periodic_x}

    def same_geometry(self, other):
        return self.metadata() == other.metadata()

    def __repr__(self):
        pbc = ' torus' if self._periodic_x else ''
        return f'<Lattice {self._model_kind} {self._lx}x{self._ly}{pbc} J1={self._j1} J2={self._j2}>'


def _vertical_value(x:int, y:int, j1:float, j2:float):
    return (j2, 'j2') if (x + y) % 2 == 0 else (j1, 'j1')

def _build(lx:int, ly:int, j1:float, j2:float, model_kind:str, periodic_x:bool):
    bonds = []
    def add(a, b, value, kind, x, y, cclass, loc):
        bonds.append(Bond(len(bonds), a, b, value, kind, x, y, cclass, loc))

    idx = lambda x, y: (x % lx)*ly + (y % ly)
    for x in range(lx):
        for y in range(ly):
            value, cclass = _vertical_value(x, y, j1, j2)
            add(idx(x, y), idx(x, y+1), value, VERTICAL, x, y, cclass, Location(x, y + 0.5, ly))

    ncols = lx if periodic_x else lx - 1
    for x in range(ncols):
        for y in range(ly):
            add(idx(x, y), idx(x+1, y), j1, HORIZONTAL, x, y, 'j1', Location(x + 0.5, y, ly))

    return Lattice(lx, ly, j1, j2, model_kind, bonds, periodic_x)

def build_cylinder(lx:int, ly:int, j1:float, j2:float, model_kind:str=None, periodic_x:bool=False):
    '''
        Build the physical cylinder.

        @param lx: open extent, >= 2
        @param ly: periodic extent, even and >= 4
        @param j1: horizontal couplers and the off-pattern vertical ones
        @param j2: one vertical bond per plaquette
        @param model_kind: 'triangular', 'villain' or 'custom'; worked out
        from (j1, j2) when not given
        @param periodic_x: also wrap x (a torus), lx must then be even

        @return: Lattice with lx*ly + (lx-1)*ly bonds (lx*ly more on a torus)
    '''
    if ly % 2:
        raise ConfigError(f'ly={ly} is odd: the alternating J1/J2 column pattern needs an even periodic extent')
    if lx < 2:
        raise ConfigError(f'lx={lx} is below the minimum of 2')
    if ly < 4:
        raise ConfigError(f'ly={ly} is below the minimum of 4')
    if periodic_x and (lx % 2 or lx < 4):
        raise ConfigError(f'lx={lx}: a torus needs an even lx of at least 4 to keep the J1/J2 pattern')

    if model_kind is None:
        model_kind = model_kind_for(j1, j2)

    lat = _build(lx, ly, float(j1), float(j2), model_kind, periodic_x)
    log.debug(f'Built {lat} with {lat.n_bonds} bonds')
    return lat

def build_ring(n:int, j:float=-1.0):
    '''
        1D periodic chain of n spins, every bond J.  Stored as a single
        column (lx=1, ly=n), so all bonds are vertical.
    '''
    if n < 3:
        raise ConfigError(f'A ring needs at least 3 sites, got {n}')
    return _build(1, n, float(j), float(j), 'custom', False)

def build_pair(j:float=-1.0):
    '''
        Two spins and the one bond between them (lx=1, ly=2).
    '''
    j = float(j)
    bonds = [Bond(0, 0, 1, j, VERTICAL, 0, 0, 'j1', Location(0, 0.5, 2))]
    return Lattice(1, 2, j, j, 'custom', bonds, False)

def build_column(n:int, j:float=-1.0):
    '''
        The lx=1 lattice of n spins: a pair for n=2, a ring above.
    '''
    return build_pair(j) if n == 2 else build_ring(n, j)

def boundary_mask(lattice:Lattice, k:int):
    '''
        Boolean site mask, False on the k columns nearest each
        open edge.
    '''
    mask = np.ones(lattice.n_sites, dtype=bool)
    if k <= 0 or lattice.periodic_x:
        return mask
    if 2*k >= lattice.lx:
        raise ConfigError(f'Excluding {k} columns per edge leaves nothing of lx={lattice.lx}')
    cols = lattice.positions()[:, 0]
    mask[(cols < k) | (cols >= lattice.lx - k)] = False
    return mask


class LatticeFile(SourceFile):
    '''
        A lattice on disk, plain text:

            # lattice version 1
            4 4 0.9 -0.9 villain
            0 1 -0.9
            0 4 0.9
            ...

        A header line "lx ly j1 j2 model_kind", then one "a b J" line per
        bond.  A torus is told apart from a cylinder by its bond count.

        lf = LatticeFile('path/to/lattice.txt')
        lf.lattice

        LatticeFile.from_lattice(lat).write('out.txt')
    '''
    Head = 'lattice'
    VersionLine = re.compile(r'#\s*lattice\s+version\s+(\d+)\s*$')
    def __init__(self, filepath:str=None):
        self.lattice = None
        super().__init__(filepath)

    @classmethod
    def from_lattice(cls, lattice:Lattice):
        lf = cls()
        lf.lattice = lattice
        return lf

    def load(self, filepath:str):
        with open(filepath, 'r') as f:
            lines = [l.strip() for l in f if l.strip()]
        found = self.VersionLine.match(lines[0]) if lines else None
        if found is None:
            raise ConfigError(f"'{filepath}' is not a lattice file, it should start with '# lattice version N'")
        self.check_version(int(found.group(1)), filepath)

        body = [l for l in lines[1:] if not l.startswith('#')]
        header = body[0].split() if body else []
        if len(header) != 5:
            raise ConfigError(f"'{filepath}' needs a 'lx ly j1 j2 model_kind' header line")
        try:
            lx, ly, j1, j2 = int(header[0]), int(header[1]), float(header[2]), float(header[3])
        except ValueError as e:
            raise ConfigError(f"'{filepath}': bad header '{body[0]}': {e}")
        try:
            bonds = np.loadtxt(body[1:], ndmin=2) if len(body) > 1 else np.zeros((0, 3))
        except ValueError as e:
            raise ConfigError(f"'{filepath}': bond lines must read 'a b J': {e}")
        if bonds.shape[1] != 3:
            raise ConfigError(f"'{filepath}': bond lines must read 'a b J', got {bonds.shape[1]} columns")
        self.lattice = self._assemble(lx, ly, j1, j2, header[4], bonds, filepath)

    def _assemble(self, lx:int, ly:int, j1:float, j2:float, model:str, bonds:np.ndarray, filepath:str):
        if lx == 1:
            base = build_column(ly, j1)
        else:
            base = build_cylinder(lx, ly, j1, j2, model, periodic_x=len(bonds) == 2*lx*ly)

        values = base.couplers()
        seen = set()
        for a, b, v in bonds:
            bond = base.bonds.between(int(a), int(b))
            if bond is None:
                raise ConfigError(f"'{filepath}': bond {int(a)}-{int(b)} is not part of {base}")
            values[bond.index] = v
            seen.add(bond.index)
        if len(seen) != base.n_bonds:
            raise ConfigError(f"'{filepath}' sets {len(seen)} distinct bonds, {base} has {base.n_bonds}")
        return base.with_couplers(values)

    def will_write(self, filepath:str):
        if self.lattice is None:
            log.error('No lattice to write')
            return False
        return super().will_write(filepath)

    def dump(self, fpath:str):
        lat = self.lattice
        a, b = lat.bonds.endpoints()
        with open(fpath, 'w') as f:
            f.write(f'# lattice version {self.Version}\n')
            f.write(f'{lat.lx} {lat.ly} {lat.j1!r} {lat.j2!r} {lat.model_kind}\n')
            np.savetxt(f, np.column_stack([a, b, lat.couplers()]), fmt=['%d', '%d', '%.17g'])
