'''
Zero-temperature (absorbing) dynamics of the six-state clock model

    H = -sum_<ij> cos(theta_i - theta_j),  theta = 2 pi q / 6

Energies are kept as integers in units of 1/2 (2 cos of a multiple
of pi/3 is an integer), so the accept-if-not-higher rule is exact.

One time step: every edge in random order with fresh uniform angles 
for both ends, then every site in random order with a fresh uniform
angle.  A proposal is accepted iff the energy does not increase.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from dataclasses import dataclass
import numpy as np
from numba import njit
import logging
log = logging.getLogger(__name__)

Q = 6
# 2 cos(2 pi d / 6)
TwoCos = np.array([2, 1, -1, -2, -1, 1], dtype=np.int64)

@dataclass
class ClockConfig:
    q: np.ndarray
    seed: object = None
    step: int = 0

    @property
    def angles(self):
        return 2*np.pi*self.q / Q

    def copy(self):
        return ClockConfig(self.q.copy(), self.seed, self.step)

def random_config(lattice, rng:np.random.Generator, seed=None):
    return ClockConfig(rng.integers(0, Q, size=lattice.n_sites).astype(np.int64), seed, 0)

@njit(cache=True)
def _half_energy(q, edges, table):
    e = 0
    for k in range(edges.shape[0]):
        e -= table[(q[edges[k, 0]] - q[edges[k, 1]]) % 6]
    return e

@njit(cache=True)
def _site_term(q, nbrs, table, i, qi, skip):
    e = 0
    for n in range(nbrs.shape[1]):
        j = nbrs[i, n]
        if j == skip:
            continue
        e -= table[(qi - q[j]) % 6]
    return e

@njit(cache=True)
def _sweep(q, edges, nbrs, table, edge_order, edge_props, site_order, site_props):
    for k in range(edge_order.shape[0]):
        e = edge_order[k]
        a = edges[e, 0]
        b = edges[e, 1]
        qa = edge_props[k, 0]
        qb = edge_props[k, 1]
        old = (_site_term(q, nbrs, table, a, q[a], b) + _site_term(q, nbrs, table, b, q[b], a)
               - table[(q[a] - q[b]) % 6])
        new = (_site_term(q, nbrs, table, a, qa, b) + _site_term(q, nbrs, table, b, qb, a)
               - table[(qa - qb) % 6])
        if new <= old:
            q[a] = qa
            q[b] = qb

    for k in range(site_order.shape[0]):
        i = site_order[k]
        qi = site_props[k]
        if _site_term(q, nbrs, table, i, qi, -1) <= _site_term(q, nbrs, table, i, q[i], -1):
            q[i] = qi

def energy(config:ClockConfig, lattice):
    '''
        sum over edges of -cos(theta_i - theta_j)
    '''
    return 0.5 * _half_energy(config.q, lattice.edges, TwoCos)

def sweep(config:ClockConfig, lattice, rng:np.random.Generator):
    '''
        One time step, in place.  Random orders and proposals all come
        from rng, so a given generator state fixes the trajectory.
    '''
    edge_order = rng.permutation(lattice.n_edges)
    edge_props = rng.integers(0, Q, size=(lattice.n_edges, 2))
    site_order = rng.permutation(lattice.n_sites)
    site_props = rng.integers(0, Q, size=lattice.n_sites)
    _sweep(config.q, lattice.edges, lattice.neighbors, TwoCos,
           edge_order, edge_props, site_order, site_props)
    config.step += 1
    return config

def magnetization(config:ClockConfig):
    '''
        |site mean of (cos theta, sin theta)|
    '''
    return float(np.abs(np.mean(np.exp(1j*config.angles))))

def domain_defects(config:ClockConfig, lattice):
    '''
        (n_vortex, n_antivortex) of the angle field around hexagons.
        A step of exactly pi counts as +pi.
    '''
    qh = config.q[lattice.hexagons]
    d = (np.roll(qh, -1, axis=1) - qh) % Q
    d = np.where(d > Q // 2, d - Q, d)
    w = d.sum(axis=1) // Q
    return int(np.sum(w > 0)), int(np.sum(w < 0))
