'''
Static structure factor

    S(q) = (1/N^2) < | sum_i s_i exp(-i q.r_i) |^2 >

averaged over reads, on the grid q = (2 pi a / nx, 2 pi b / ny).  The
physical view uses r = (x, y) on the lx x ly cylinder; the logical view
of a triangular-model read uses the sheared coordinates (x, w) of the
contracted lattice.  For every read the grid sums to 1.

    sf = structure_factor(samples)
    sf.peak()
    slices = peak_slices(sf)
    xi_x, xi_y = correlation_lengths(samples)

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import math
import numpy as np
from fquench.errors import ConfigError, PeakFitError
from fquench.analysis.peakfit import fit_pseudo_voigt
import logging
log = logging.getLogger(__name__)

SliceHalfWidth = math.pi/2
SlicePoints = 41

def _grid_spins(samples, logical=None):
    reads = samples.reads
    if logical is None:
        md = samples.metadata
        lx, ly = int(md.get('lx', 1)), int(md.get('ly', samples.n_sites))
        if lx*ly != samples.n_sites:
            raise ConfigError(f'Metadata {lx}x{ly} does not match {samples.n_sites} sites')
        return reads.reshape(samples.n_reads, lx, ly).astype(float)
    spins, _ = logical.logical_spins(reads)
    x, w = logical.sheared_coords()
    grid = np.zeros((samples.n_reads, logical.lx, logical.ly))
    grid[:, x, w] = spins
    return grid

def _positions(samples, logical=None):
    if logical is None:
        ly = int(samples.metadata.get('ly', samples.n_sites))
        idx = np.arange(samples.n_sites)
        return np.stack([idx // ly, idx % ly], axis=1).astype(float)
    x, w = logical.sheared_coords()
    return np.stack([x, w], axis=1).astype(float)

def _spins(samples, logical=None):
    if logical is None:
        return samples.reads.astype(float)
    return logical.logical_spins(samples.reads)[0].astype(float)

class StructureFactor:
    '''
        grid[a, b] = S(qx[a], qy[b]), read averaged.
        per_read holds the unaveraged grids when kept.
    '''
    def __init__(self, grid:np.ndarray, qx:np.ndarray, qy:np.ndarray, n_reads:int,
                 logical:bool=False, per_read:np.ndarray=None):
        self.grid = grid
        self.qx = qx
        self.qy = qy
        self.n_reads = n_reads
        self.logical = logical
        self.per_read = per_read

    @property
    def shape(self):
        return self.grid.shape

    def total(self):
        if self.per_read is not None:
            return self.per_read.sum(axis=(1, 2))
        return float(self.grid.sum())

    def peak(self, exclude_zero:bool=True):
        '''
            (a, b) grid index of the brightest point, q = 0 left out
            unless exclude_zero is False or it is the only point
        '''
        g = self.grid.copy()
        if exclude_zero and g.size > 1:
            g[0, 0] = -np.inf
        return np.unravel_index(int(np.argmax(g)), g.shape)

    def peak_q(self, exclude_zero:bool=True):
        a, b = self.peak(exclude_zero)
        return float(self.qx[a]), float(self.qy[b])

    def write_grid(self, path:str):
        '''
            One "qx qy S" line per grid point
        '''
        QX, QY = np.meshgrid(self.qx, self.qy, indexing='ij')
        data = np.stack([QX.ravel(), QY.ravel(), self.grid.ravel()], axis=1)
        np.savetxt(path, data, fmt='%.10g', header='qx qy S')
        log.info(f'Wrote {self.grid.shape[0]}x{self.grid.shape[1]} structure factor grid to {path}')
        return path

    def __repr__(self):
        view = 'logical' if self.logical else 'physical'
        return f'<StructureFactor {view} {self.grid.shape[0]}x{self.grid.shape[1]} over {self.n_reads} reads>'

def structure_factor(samples, logical=None, keep_reads:bool=False):
    '''
        @param samples: SampleSet
        @param logical: LogicalLattice for the triangular view, physical
        view when None
        @param keep_reads: also keep every read's grid
    '''
    grid = _grid_spins(samples, logical)
    n = grid.shape[1] * grid.shape[2]
    f = np.fft.fft2(grid, axes=(1, 2))
    per_read = (f.real**2 + f.imag**2) / (n*n)
    nx, ny = grid.shape[1:]
    qx = 2*math.pi*np.arange(nx)/nx
    qy = 2*math.pi*np.arange(ny)/ny
    return StructureFactor(per_read.mean(axis=0), qx, qy, samples.n_reads,
                           logical is not None, per_read if keep_reads else None)

def direct_structure_factor(spins:np.ndarray, positions:np.ndarray, q:np.ndarray):
    '''
        S at the points q (n_q, 2) by the double sum over site pairs,
        read averaged.  Quadratic in the number of sites.
    '''
    spins = np.atleast_2d(np.asarray(spins, dtype=float))
    n = spins.shape[1]
    dr = positions[:, None, :] - positions[None, :, :]
    out = np.empty(len(q))
    ss = np.einsum('ri,rj->ij', spins, spins) / spins.shape[0]
    for k, qk in enumerate(q):
        out[k] = np.sum(ss * np.cos(dr @ qk)) / (n*n)
    return out

def peak_slices(sf:StructureFactor, exclude_zero:bool=True):
    '''
        Grid cuts through the brightest peak along qx and qy, rolled so the
        peak sits in the middle.

        @return: {'x': (q, S), 'y': (q, S)}
    '''
    a, b = sf.peak(exclude_zero)
    out = dict()
    for name, axis, q, idx in (('x', 0, sf.qx, a), ('y', 1, sf.qy, b)):
        n = len(q)
        line = sf.grid[:, b] if axis == 0 else sf.grid[a, :]
        offsets = np.arange(n) - n//2
        take = (idx + offsets) % n
        out[name] = (q[idx] + 2*math.pi*offsets/n, line[take])
    return out

def continuous_slice(samples, q0, direction, n:int=SlicePoints, half_width:float=SliceHalfWidth,
                     logical=None):
    '''
        S along q0 + t * direction for n values of t in
        [-half_width, half_width], direction normalised.

        @return: (t, S)
    '''
    direction = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(direction)
    if norm == 0:
        raise ConfigError('Slice direction must be non-zero')
    t = np.linspace(-half_width, half_width, n)
    q = np.asarray(q0, dtype=float)[None, :] + t[:, None]*(direction/norm)[None, :]
    r = _positions(samples, logical)
    s = _spins(samples, logical)
    phases = np.exp(-1j*(r @ q.T))
    amps = s @ phases
    return t, np.mean(np.abs(amps)**2, axis=0) / (r.shape[0]**2)

def correlation_lengths(samples, logical=None, n:int=SlicePoints, half_width:float=SliceHalfWidth):
    '''
        (xi_x, xi_y) from Pseudo-Voigt fits of continuous cuts through
        the brightest non-zero peak; NaN where a fit fails.
    '''
    sf = structure_factor(samples, logical)
    q0 = np.array(sf.peak_q())
    out = []
    for name, direction in (('x', (1.0, 0.0)), ('y', (0.0, 1.0))):
        t, s = continuous_slice(samples, q0, direction, n, half_width, logical)
        try:
            out.append(fit_pseudo_voigt(t, s).xi)
        except (PeakFitError, ConfigError) as e:
            log.warning(f'No correlation length along {name} at q0={tuple(np.round(q0, 4))}: {e}')
            out.append(float('nan'))
    return tuple(out)
