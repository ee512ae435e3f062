'''
Periodic honeycomb lattice as a brick wall on an l x l square grid.

Every horizontal edge (x,y)-(x+1,y) is kept; the vertical edge 
(x,y)-(x,y+1) is kept only when (x+y) is even.  Site (x, y) has 
index x*l + y.  Hexagonal faces are the 2x1 rectangles anchored at 
(x, y) with (x+y) even.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import numpy as np
from fquench.errors import ConfigError

class HoneycombLattice:
    def __init__(self, l:int):
        if l < 4 or l % 2:
            raise ConfigError(f'Honeycomb size l={l} must be even and at least 4')
        self.l = l
        n = l*l
        idx = lambda x, y: (x % l)*l + (y % l)

        edges = []
        for x in range(l):
            for y in range(l):
                edges.append((idx(x, y), idx(x+1, y)))
                if (x + y) % 2 == 0:
                    edges.append((idx(x, y), idx(x, y+1)))
        self.edges = np.array(edges, dtype=np.int64)

        nbrs = [[] for _ in range(n)]
        for a, b in edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        self.neighbors = np.array(nbrs, dtype=np.int64)

        hexes = []
        for x in range(l):
            for y in range(l):
                if (x + y) % 2 == 0:
                    hexes.append((idx(x, y), idx(x+1, y), idx(x+2, y),
                                  idx(x+2, y+1), idx(x+1, y+1), idx(x, y+1)))
        self.hexagons = np.array(hexes, dtype=np.int64)

        for arr in (self.edges, self.neighbors, self.hexagons):
            arr.setflags(write=False)

    @property
    def n_sites(self):
        return self.l * self.l

    @property
    def n_edges(self):
        return len(self.edges)

    def positions(self):
        idx = np.arange(self.n_sites)
        return np.stack([idx // self.l, idx % self.l], axis=1)

    def __repr__(self):
        return f'<HoneycombLattice {self.l}x{self.l}, {self.n_sites} sites, {self.n_edges} edges>'
