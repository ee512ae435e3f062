'''
Pseudospin vortices of triangular-model reads, and frustrated bonds.

Each logical triangle (a, b, c), ordered by its Tri sublattice labels,
carries the pseudospin

    psi = (s_a + w s_b + w^2 s_c) / sqrt(3),  w = exp(2 pi i / 3)

whose phase is a multiple of pi/3.  A triangle with three equal spins
has psi = 0; it takes the phase of the nearest non-degenerate face
(breadth first over shared edges) and is flagged.

The winding around a logical vertex sums the phase steps between its
six faces, each wrapped to (-pi, pi].  Loops touching a degenerate face
are left out and reported as skipped.

    field = pseudospin_field(read, logical)
    count = count_defects(field, logical)
    count.n_vortex, count.n_antivortex, count.density

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from collections import deque
from dataclasses import dataclass
import math
import numpy as np
import pandas as pd
from fquench.errors import ConfigError, NumericalError
from fquench.lattice import contract_to_triangular
from fquench.lattice.sublattice import tri_labels
import logging
log = logging.getLogger(__name__)

Omega = np.exp(2j*math.pi/3)
Sextant = math.pi/3
DegenerateTolerance = 1e-9

class DefectField:
    '''
        Phase per logical triangle face.

        @param phases: radians, one per face
        @param degenerate: optional mask of faces whose phase was
        inherited from a neighbour
        @param psi: optional complex pseudospins
    '''
    def __init__(self, phases, degenerate=None, psi=None):
        self.phases = np.asarray(phases, dtype=float)
        if degenerate is None:
            degenerate = np.zeros(len(self.phases), dtype=bool)
        self.degenerate = np.asarray(degenerate, dtype=bool)
        self.psi = psi

    @property
    def n_faces(self):
        return len(self.phases)

    @property
    def n_degenerate(self):
        return int(self.degenerate.sum())

    def __repr__(self):
        return f'<DefectField {self.n_faces} faces, {self.n_degenerate} degenerate>'

@dataclass
class DefectCount:
    n_vortex: int
    n_antivortex: int
    windings: np.ndarray
    vertices: np.ndarray
    skipped: int = 0

    @property
    def n_loops(self):
        return len(self.windings) - self.skipped

    @property
    def total(self):
        return self.n_vortex + self.n_antivortex

    @property
    def density(self):
        return self.total / self.n_loops if self.n_loops else float('nan')

    def as_tuple(self):
        return (self.n_vortex, self.n_antivortex)

def ordered_faces(logical, labels=None):
    '''
        (n_faces, 3) vertices of each face ordered by Tri label 0, 1, 2
    '''
    if labels is None:
        labels = tri_labels(logical)
    faces = np.array(logical.triangle_faces, dtype=np.int64)
    fl = labels[faces]
    if np.any(np.sort(fl, axis=1) != np.arange(3)):
        bad = int(np.flatnonzero(np.any(np.sort(fl, axis=1) != np.arange(3), axis=1))[0])
        raise ConfigError(f'Face {tuple(faces[bad])} does not see all three Tri sublattices, '
                          f'lx and ly/2 must be multiples of 3')
    return np.take_along_axis(faces, np.argsort(fl, axis=1), axis=1)

def _fill_degenerate(phases:np.ndarray, degenerate:np.ndarray, face_neighbors):
    if not degenerate.any():
        return phases
    if degenerate.all():
        phases[:] = 0.0
        return phases
    done = ~degenerate
    queue = deque(np.flatnonzero(done))
    while queue:
        f = queue.popleft()
        for g in face_neighbors[f]:
            if not done[g]:
                phases[g] = phases[f]
                done[g] = True
                queue.append(g)
    return phases

def pseudospin_field(read, logical, faces:np.ndarray=None):
    '''
        Pseudospin phases of one read.

        @param read: physical spins (n_physical,) or logical spins
        (n_logical,), +-1
        @param logical: LogicalLattice
        @param faces: ordered_faces(logical), computed when not given
        @return: DefectField
    '''
    read = np.asarray(read)
    if read.shape == (logical.physical.n_sites,):
        spins, _ = logical.logical_spins(read)
    elif read.shape == (logical.n_sites,):
        spins = read
    else:
        raise ConfigError(f'Read of shape {read.shape} fits neither {logical.physical.n_sites} '
                          f'physical nor {logical.n_sites} logical sites')
    if faces is None:
        faces = ordered_faces(logical)

    s = spins.astype(float)
    psi = (s[faces[:, 0]] + Omega*s[faces[:, 1]] + Omega**2*s[faces[:, 2]]) / math.sqrt(3.0)
    degenerate = np.abs(psi) < DegenerateTolerance
    nondeg = np.abs(psi[~degenerate])
    # +-1 spins give |psi| = 2/sqrt(3) or 0
    assert np.allclose(nondeg, 2/math.sqrt(3.0)), 'pseudospin magnitude off the +-1 lattice'
    phases = np.rint(np.angle(psi) / Sextant) * Sextant
    phases = _fill_degenerate(phases, degenerate, logical.face_neighbors)
    return DefectField(phases, degenerate, psi)

def wrap_phase(d):
    '''
        Map to (-pi, pi]
    '''
    return math.pi - np.mod(math.pi - np.asarray(d, dtype=float), 2*math.pi)

def count_defects(field:DefectField, logical, skip_degenerate:bool=True):
    '''
        Vortices and antivortices around every complete dual loop.

        @param skip_degenerate: leave out loops touching a degenerate
        face; False counts them with the inherited phases
        @return: DefectCount, skipped holding the loops left out
        @note: a loop with |winding| > 1 and no degenerate face raises
        NumericalError; with a degenerate face it is always dropped
    '''
    if field.n_faces != len(logical.triangle_faces):
        raise ConfigError(f'Field has {field.n_faces} phases, lattice has {len(logical.triangle_faces)} faces')
    if not logical.dual_loops:
        return DefectCount(0, 0, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))

    vertices = np.array([v for v, _ in logical.dual_loops], dtype=np.int64)
    loops = np.array(logical.dual_faces, dtype=np.int64)
    th = field.phases[loops]
    steps = wrap_phase(np.roll(th, -1, axis=1) - th)
    windings = np.rint(steps.sum(axis=1) / (2*math.pi)).astype(np.int64)

    touched = field.degenerate[loops].any(axis=1)
    skip = touched.copy() if skip_degenerate else np.zeros(len(loops), dtype=bool)
    wild = np.abs(windings) > 1
    if np.any(wild & ~touched):
        v = vertices[np.flatnonzero(wild & ~touched)[0]]
        raise NumericalError(f'Winding {windings[np.flatnonzero(wild & ~touched)[0]]} around logical site {v}')
    if np.any(wild & touched & ~skip):
        log.warning(f'Dropping {int(np.sum(wild & touched & ~skip))} loop(s) with |winding| > 1 next to degenerate faces')
        skip |= wild

    windings = np.where(skip, 0, windings)
    return DefectCount(int(np.sum(windings > 0)), int(np.sum(windings < 0)), windings, vertices, int(skip.sum()))

def defect_table(samples, logical=None, skip_degenerate:bool=True):
    '''
        Defect counts for every read.

        @return: DataFrame with one row per read and columns n_vortex,
        n_antivortex, density and skipped (loops left out); density is
        NaN for a read whose every loop was left out
    '''
    if logical is None:
        logical = contract_to_triangular(samples.lattice())
    faces = ordered_faces(logical)
    counts = [count_defects(pseudospin_field(read, logical, faces), logical, skip_degenerate)
              for read in samples.reads]
    return pd.DataFrame({'n_vortex': np.array([c.n_vortex for c in counts], dtype=np.int64),
                         'n_antivortex': np.array([c.n_antivortex for c in counts], dtype=np.int64),
                         'density': np.array([c.density for c in counts], dtype=float),
                         'skipped': np.array([c.skipped for c in counts], dtype=np.int64)})

def defect_counts(samples, logical=None, skip_degenerate:bool=True):
    '''
        @return: (n_vortex, n_antivortex, density) arrays, one entry per read
    '''
    table = defect_table(samples, logical, skip_degenerate)
    return table['n_vortex'].to_numpy(), table['n_antivortex'].to_numpy(), table['density'].to_numpy()

def frustrated_bond_density(samples, lattice=None, ground:float=None):
    '''
        Fraction of frustrated bonds (J s_i s_j > 0) per read, less the
        ground value when one is given.
    '''
    if lattice is None:
        lattice = samples.lattice()
    a, b = lattice.bonds.endpoints()
    values = lattice.couplers()
    reads = samples.reads.astype(np.int32)
    frac = np.mean(values[None, :] * reads[:, a] * reads[:, b] > 0, axis=1)
    if ground is not None:
        frac = frac - ground
    return frac

def frustration_floor(lattice):
    '''
        Lower bound on the frustrated bond fraction of any configuration:
        a frustrated plaquette holds an odd number of frustrated bonds and
        a bond borders at most two plaquettes.
    '''
    values = lattice.couplers()
    n = 0
    for _, bonds in lattice.plaquettes():
        if np.prod(np.sign(values[bonds])) < 0:
            n += 1
    return math.ceil(n / 2) / lattice.n_bonds
