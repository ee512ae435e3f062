'''
Contraction of the cylinder to a triangular lattice.

Each J2 bond binds two physical spins into one logical site.  In
column x, logical row k holds physical rows 2k+p and 2k+p+1 (mod ly)
with p = x % 2.  Logical sites are indexed x*(ly/2) + k.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import math
import numpy as np
from fquench.collection import ElementCollection
from fquench.errors import ConfigError
from fquench.lattice.site import Location
import logging
log = logging.getLogger(__name__)

class LogicalSite:
    def __init__(self, index:int, x:int, k:int, members:tuple, ly:int, lyl:int):
        self.index = index
        self.x = x
        self.k = k
        self.members = members
        # sheared row, neighbours sit at (0,+-1), (+-1,0), (1,-1), (-1,1)
        self.w = (k - x // 2) % lyl
        # embedding used for angles: midpoint of the physical pair
        self.at = Location(x, (2*k + x % 2 + 0.5) % ly, ly)

    def __repr__(self):
        return f'<LogicalSite {self.index} (x={self.x}, k={self.k}) {self.members}>'

class LogicalLattice:
    '''
        Triangular view of a cylinder.

        logical = contract_to_triangular(lattice)
        logical.logical_sites[3].members
        logical.adjacency[3]
        logical.triangle_faces     # one per physical plaquette
        logical.dual_loops         # (vertex, 6 faces counterclockwise)
    '''
    def __init__(self, lattice, sites:list, physical_to_logical:np.ndarray):
        self._physical = lattice
        self._sites = ElementCollection(self, sites)
        self._p2l = physical_to_logical
        self._p2l.setflags(write=False)
        self._build_adjacency()
        self._build_faces()
        self._build_dual_loops()

    @property
    def physical(self):
        return self._physical

    @property
    def logical_sites(self):
        return self._sites

    @property
    def n_sites(self):
        return len(self._sites)

    @property
    def lx(self):
        return self._physical.lx

    @property
    def ly(self):
        return self._physical.ly // 2

    @property
    def physical_to_logical(self):
        return self._p2l

    @property
    def adjacency(self):
        return self._adjacency

    @property
    def triangle_faces(self):
        return self._faces

    @property
    def dual_loops(self):
        return self._dual_loops

    @property
    def dual_faces(self):
        return [loop for _, loop in self._dual_loops]

    @property
    def face_neighbors(self):
        return self._face_neighbors

    def coordination(self, index:int):
        return len(self._adjacency[index])

    def sheared_coords(self):
        '''
            (x, w) integer arrays, one entry per logical site
        '''
        x = np.array([s.x for s in self._sites], dtype=np.int64)
        w = np.array([s.w for s in self._sites], dtype=np.int64)
        return x, w

    def first_members(self):
        return np.array([s.members[0] for s in self._sites], dtype=np.int64)

    def logical_spins(self, reads):
        '''
            Logical spins from physical reads.

            @param reads: (n_reads, n_physical) or (n_physical,) of +-1
            @return: (spins, broken) where spins takes each pair's first
            member and broken counts pairs whose members disagree, per read
        '''
        reads = np.asarray(reads)
        single = reads.ndim == 1
        reads = np.atleast_2d(reads)
        m0 = self.first_members()
        m1 = np.array([s.members[1] for s in self._sites], dtype=np.int64)
        spins = reads[:, m0]
        broken = np.sum(reads[:, m0] != reads[:, m1], axis=1)
        if single:
            return spins[0], int(broken[0])
        return spins, broken

    def _displacement(self, a:int, b:int):
        lx_wrap = self._physical.lx if self._physical.periodic_x else None
        return self._sites[a].at.displacement_to(self._sites[b].at, lx_wrap)

    def _build_adjacency(self):
        nbrs = [set() for _ in range(self.n_sites)]
        for bond in self._physical.bonds:
            la, lb = self._p2l[bond.a], self._p2l[bond.b]
            if la == lb:
                continue
            nbrs[la].add(int(lb))
            nbrs[lb].add(int(la))
        self._adjacency = [sorted(n) for n in nbrs]

    def _build_faces(self):
        faces = []
        for corners, _ in self._physical.plaquettes():
            tri = []
            for c in corners:
                lc = int(self._p2l[c])
                if lc not in tri:
                    tri.append(lc)
            if len(tri) != 3:
                raise ConfigError(f'Plaquette {corners} does not contract to a triangle')
            faces.append(tuple(tri))
        self._faces = faces

        self._face_index = dict()
        by_edge = dict()
        for i, tri in enumerate(faces):
            self._face_index.setdefault(frozenset(tri), i)
            for e in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
                by_edge.setdefault(frozenset(e), []).append(i)
        fn = [set() for _ in faces]
        for members in by_edge.values():
            for i in members:
                for j in members:
                    if i != j:
                        fn[i].add(j)
        self._face_neighbors = [sorted(n) for n in fn]

    def face_of(self, a:int, b:int, c:int):
        return self._face_index.get(frozenset((a, b, c)), None)

    def face_centroids(self):
        '''
            (n_faces, 2) centroids in the embedding, y in [0, ly)
        '''
        ly = self._physical.ly
        out = np.empty((len(self._faces), 2))
        for i, tri in enumerate(self._faces):
            origin = self._sites[tri[0]].at
            d = np.array([self._displacement(tri[0], v) for v in tri])
            cx, cy = d.mean(axis=0)
            out[i] = (origin.x + cx, (origin.y + cy) % ly)
        return out

    def _build_dual_loops(self):
        loops = []
        for v in range(self.n_sites):
            nbrs = self._adjacency[v]
            if len(nbrs) != 6:
                continue
            ordered = sorted(nbrs, key=lambda n: math.atan2(*reversed(self._displacement(v, n))))
            loop = []
            for i in range(6):
                f = self.face_of(v, ordered[i], ordered[(i+1) % 6])
                if f is None:
                    break
                loop.append(f)
            if len(loop) == 6:
                loops.append((v, loop))
        self._dual_loops = loops
        log.debug(f'{len(loops)} dual loops on {self.n_sites} logical sites')

    def __repr__(self):
        return f'<LogicalLattice {self.lx}x{self.ly} from {self._physical}>'


def contract_to_triangular(lattice):
    '''
        Identify the two ends of every J2 bond.

        @param lattice: built by build_cylinder
        @return: LogicalLattice with lx * ly/2 sites
    '''
    if lattice.lx < 2:
        raise ConfigError('Contraction needs a cylinder with lx >= 2, not a ring')
    lx, ly = lattice.lx, lattice.ly
    lyl = ly // 2
    p2l = np.empty(lattice.n_sites, dtype=np.int64)
    sites = []
    for x in range(lx):
        p = x % 2
        for k in range(lyl):
            a = lattice.site_index(x, 2*k + p)
            b = lattice.site_index(x, 2*k + p + 1)
            idx = x*lyl + k
            p2l[a] = idx
            p2l[b] = idx
            sites.append(LogicalSite(idx, x, k, (a, b), ly, lyl))

    for bond in lattice.bonds.of_class('j2'):
        if p2l[bond.a] != p2l[bond.b]:
            raise ConfigError(f'{bond} crosses logical sites, lattice is not a J1/J2 cylinder')

    return LogicalLattice(lattice, sites, p2l)
