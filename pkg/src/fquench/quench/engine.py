'''
Exact quench of the transverse-field Ising model

    H(s) = -Gamma(s) sum_i sigma^x_i + J(s) [ sum_ij J_ij sigma^z_i sigma^z_j - sum_i h_i sigma^z_i ]

from the uniform superposition, over a simulated duration T = pi * t_a
with s = t / T.

Integration is second-order symmetric splitting: the transverse part is
a product of single-qubit rotations, the Ising part a diagonal phase.
Diagonal half-steps of consecutive steps are merged.

    engine = QuenchEngine(lattice, default_schedule())
    final = engine.evolve(init_state(lattice.n_sites), QuenchParams(t_a=8))
    reads = sample(final, 1000, seed=1, lattice=lattice)

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import math
from dataclasses import dataclass, asdict
import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy import linalg
from fquench.errors import ConfigError, NumericalError
from fquench.quench.state import StateVector, check_qubits, NormTolerance
import logging
log = logging.getLogger(__name__)

# simulated time per unit of anneal time
TimeScale = math.pi
DefaultDt = 0.05
# ground-state oracle limits
MaxExactQubits = 16
DenseLimit = 256
DegeneracyTolerance = 1e-8

@dataclass(frozen=True)
class QuenchParams:
    t_a: float
    dt: float = DefaultDt
    seed: int = 0
    reads: int = 1000

    def __post_init__(self):
        if not self.t_a > 0:
            raise ConfigError(f't_a must be positive, got {self.t_a}')
        if not self.dt > 0:
            raise ConfigError(f'dt must be positive, got {self.dt}')
        if self.reads < 1:
            raise ConfigError(f'reads must be at least 1, got {self.reads}')

    @property
    def duration(self):
        return TimeScale * self.t_a

    def steps(self):
        T = self.duration
        if self.dt > T:
            raise ConfigError(f'dt={self.dt} exceeds the simulated duration pi*t_a={T:.6g}')
        return max(1, math.ceil(T / self.dt - 1e-9))

    def as_dict(self):
        return asdict(self)

@dataclass
class GroundState:
    state: StateVector
    energy: float
    gap: float
    degenerate: bool

def ising_energies(lattice, h=None):
    '''
        Diagonal of sum_ij J_ij s_i s_j - sum_i h_i s_i over all basis states
    '''
    n = lattice.n_sites
    check_qubits(n)
    idx = np.arange(1 << n, dtype=np.int64)
    def spin(i):
        return (1 - 2*((idx >> (n - 1 - i)) & 1)).astype(np.int8)

    energies = np.zeros(1 << n, dtype=float)
    for bond in lattice.bonds:
        energies += bond.value * (spin(bond.a) * spin(bond.b))
    if h is not None:
        h = np.asarray(h, dtype=float)
        if h.shape != (n,):
            raise ConfigError(f'Need {n} longitudinal fields, got {h.shape}')
        for i in np.flatnonzero(h):
            energies -= h[i] * spin(i)
    return energies

def _apply_x_rotation(amps:np.ndarray, n:int, theta:float):
    '''
        exp(i theta sum_i sigma^x_i) in place, one qubit at a time
    '''
    c, s = math.cos(theta), 1j*math.sin(theta)
    for i in range(n):
        view = amps.reshape(1 << i, 2, 1 << (n - i - 1))
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c*a0 + s*a1
        view[:, 1, :] = s*a0 + c*a1

class QuenchEngine:
    '''
        Holds the lattice, schedule and precomputed Ising diagonal.

        @param h: optional longitudinal fields, one per site
        @param check_every: steps between norm checks
    '''
    def __init__(self, lattice, schedule, h=None, check_every:int=100):
        self.lattice = lattice
        self.schedule = schedule
        self.n = lattice.n_sites
        check_qubits(self.n)
        self.energies = ising_energies(lattice, h)
        self.check_every = check_every
        self.max_norm_drift = 0.0

    def _check_norm(self, amps:np.ndarray, where:str):
        drift = abs(np.sqrt(np.vdot(amps, amps).real) - 1.0)
        self.max_norm_drift = max(self.max_norm_drift, drift)
        if drift > NormTolerance:
            log.error(f'Norm drift {drift:.3e} {where}')
            raise NumericalError(f'Norm drifted by {drift:.3e} (> {NormTolerance}) {where}')

    def _check_state(self, state:StateVector):
        if state.n_qubits != self.n:
            raise ConfigError(f'State has {state.n_qubits} qubits, lattice has {self.n} sites')

    def evolve(self, state:StateVector, params:QuenchParams, record=None):
        '''
            Run the anneal from s=0 to s=1.

            @param state: initial state, left untouched
            @param params: t_a and dt
            @param record: optional callable(step, s, amplitudes) invoked
            after every step
            @return: final StateVector
        '''
        self._check_state(state)
        nsteps = params.steps()
        T = params.duration
        dt = T / nsteps
        s_mid = (np.arange(nsteps) + 0.5) / nsteps
        gammas = self.schedule.gamma(s_mid)
        jcals = self.schedule.jcal(s_mid)

        amps = state.amplitudes.copy()
        self.max_norm_drift = 0.0
        log.debug(f'Evolving {self.n} qubits, T={T:.4g}, {nsteps} steps of {dt:.4g}')

        # leading half step
        amps *= np.exp(-0.5j * dt * jcals[0] * self.energies)
        for k in range(nsteps):
            _apply_x_rotation(amps, self.n, gammas[k] * dt)
            if k + 1 < nsteps:
                amps *= np.exp(-0.5j * dt * (jcals[k] + jcals[k+1]) * self.energies)
            else:
                amps *= np.exp(-0.5j * dt * jcals[k] * self.energies)
            if record is not None:
                record(k, (k + 1) / nsteps, amps)
            if (k + 1) % self.check_every == 0:
                self._check_norm(amps, f'at step {k+1}/{nsteps}')

        self._check_norm(amps, 'at the end of the anneal')
        return StateVector(amps)

    def evolve_fixed(self, state:StateVector, gamma:float, jcal:float, duration:float, dt:float=DefaultDt):
        '''
            Evolve under the time-independent H(gamma, jcal) for duration.
        '''
        self._check_state(state)
        if dt > duration:
            raise ConfigError(f'dt={dt} exceeds duration {duration}')
        nsteps = max(1, math.ceil(duration / dt - 1e-9))
        dt = duration / nsteps
        half = np.exp(-0.5j * dt * jcal * self.energies)
        full = half * half
        amps = state.amplitudes.copy()
        amps *= half
        for k in range(nsteps):
            _apply_x_rotation(amps, self.n, gamma * dt)
            amps *= full if k + 1 < nsteps else half
        self._check_norm(amps, 'after fixed-H evolution')
        return StateVector(amps)

    def energy_expectation(self, state:StateVector, gamma:float, jcal:float):
        self._check_state(state)
        amps = state.amplitudes
        e = jcal * float(np.dot(self.energies, np.abs(amps)**2))
        x_sum = 0.0
        for i in range(self.n):
            view = amps.reshape(1 << i, 2, 1 << (self.n - i - 1))
            x_sum += 2.0 * np.vdot(view[:, 0, :], view[:, 1, :]).real
        return e - gamma * x_sum

    def hamiltonian(self, gamma:float, jcal:float):
        '''
            Sparse H(gamma, jcal)
        '''
        dim = 1 << self.n
        idx = np.arange(dim, dtype=np.int64)
        H = sp.diags(jcal * self.energies, format='csr')
        if gamma != 0:
            rows = np.concatenate([idx for _ in range(self.n)])
            cols = np.concatenate([idx ^ (1 << (self.n - 1 - i)) for i in range(self.n)])
            X = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(dim, dim))
            H = H - gamma * X
        return H

    def _low_spectrum(self, gamma:float, jcal:float, k:int):
        H = self.hamiltonian(gamma, jcal)
        if H.shape[0] <= DenseLimit:
            evals, evecs = linalg.eigh(H.toarray())
            return evals[:k], evecs[:, :k]
        k = min(k, H.shape[0] - 2)
        evals, evecs = spla.eigsh(H, k=k, which='SA')
        order = np.argsort(evals)
        return evals[order], evecs[:, order]

    def ground_state(self, gamma:float, jcal:float):
        if self.n > MaxExactQubits:
            raise ConfigError(f'Exact ground states are limited to {MaxExactQubits} sites, lattice has {self.n}')
        evals, evecs = self._low_spectrum(gamma, jcal, 2)
        gap = float(evals[1] - evals[0]) if len(evals) > 1 else math.inf
        degenerate = gap < DegeneracyTolerance
        if degenerate:
            log.warning(f'Degenerate ground space at gamma={gamma}, jcal={jcal}, returning one member')
        return GroundState(StateVector(evecs[:, 0]), float(evals[0]), gap, degenerate)

    def ground_space_weight(self, state:StateVector, gamma:float, jcal:float, k:int=8):
        '''
            Probability weight of state on the (possibly degenerate)
            ground space of H(gamma, jcal).
        '''
        self._check_state(state)
        if gamma == 0:
            diag = jcal * self.energies
            ground = diag <= diag.min() + DegeneracyTolerance
            return float(np.sum(state.probabilities()[ground]))
        evals, evecs = self._low_spectrum(gamma, jcal, k)
        ground = evals <= evals[0] + DegeneracyTolerance
        proj = evecs[:, ground].conj().T @ state.amplitudes
        return float(np.sum(np.abs(proj)**2))

def evolve(state:StateVector, lattice, schedule, params:QuenchParams):
    return QuenchEngine(lattice, schedule).evolve(state, params)

def exact_ground_state(lattice, gamma:float, jcal:float):
    '''
        Lowest eigenvector of H(gamma, jcal), dense below 257 states,
        Lanczos above.  Flagged degenerate when the gap is below 1e-8.
    '''
    if lattice.n_sites > MaxExactQubits:
        raise ConfigError(f'Exact ground states are limited to {MaxExactQubits} sites, lattice has {lattice.n_sites}')
    return QuenchEngine(lattice, None).ground_state(gamma, jcal)
