'''
Samplers driven by the shim loop.

A Sampler takes the programmed controls (couplers, per-qubit flux
biases, per-line anneal offsets) and returns a SampleSet.  The concrete
samplers here are ideal: flux acts as a longitudinal field
h_i = flux_to_field * flux_i and offsets have no effect.  MockSampler
wraps one of them and adds hidden miscalibration:

  field    h_i  <- h_i + b_i
  coupler  J_ij <- J_ij * g_ij * prod over the lines l of i and j of
                   (1 - lam * (e_l + offset_l))

    mock = MockSampler.with_errors(GibbsSampler(), lattice, bias=0.05, gain_error=0.1)
    samples = mock.sample(lattice, 100, seed, couplers=J, flux=phi, offsets=o, lines=lines)

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from abc import ABC, abstractmethod
import math
import numpy as np
from numba import njit
from fquench.errors import ConfigError
from fquench.quench import QuenchEngine, QuenchParams, SampleSet, init_state, sample, MaxQubits
from fquench.schedule import default_schedule
import logging
log = logging.getLogger(__name__)

# effective longitudinal field per unit flux bias
FluxToField = 2000.0
QuenchSamplerQubits = 20

def _neighbor_tables(lattice):
    n = lattice.n_sites
    deg = np.zeros(n, dtype=np.int64)
    for bond in lattice.bonds:
        deg[bond.a] += 1
        deg[bond.b] += 1
    nbr = np.full((n, max(1, deg.max())), -1, dtype=np.int64)
    via = np.full_like(nbr, -1)
    fill = np.zeros(n, dtype=np.int64)
    for bond in lattice.bonds:
        for u, v in ((bond.a, bond.b), (bond.b, bond.a)):
            nbr[u, fill[u]] = v
            via[u, fill[u]] = bond.index
            fill[u] += 1
    return nbr, via, deg

@njit(cache=True)
def _heat_bath(spins, nbr, via, deg, couplers, h, beta, uniforms):
    # energy sum J s_i s_j - sum h s_i, one pass per row of uniforms
    n = spins.shape[0]
    for t in range(uniforms.shape[0]):
        for i in range(n):
            field = h[i]
            for k in range(deg[i]):
                field -= couplers[via[i, k]] * spins[nbr[i, k]]
            p_up = 1.0 / (1.0 + math.exp(-2.0 * beta * field))
            spins[i] = 1 if uniforms[t, i] < p_up else -1

def _as_seed(seed):
    if isinstance(seed, np.random.SeedSequence):
        return int(seed.generate_state(1, np.uint64)[0])
    return int(seed)

class Sampler(ABC):
    '''
        Anything that turns programmed controls into reads.
        Implementations keep no state between calls.
    '''
    flux_to_field = FluxToField

    def fields(self, lattice, flux=None):
        if flux is None:
            return np.zeros(lattice.n_sites)
        flux = np.asarray(flux, dtype=float)
        if flux.shape != (lattice.n_sites,):
            raise ConfigError(f'Need {lattice.n_sites} flux biases, got {flux.shape}')
        return self.flux_to_field * flux

    def sample(self, lattice, reads:int, seed, couplers=None, flux=None, offsets=None, lines=None):
        '''
            @param couplers: programmed J per bond, lattice values when None
            @param flux: flux bias per qubit
            @param offsets: anneal offset per line, ignored by ideal samplers
            @param lines: anneal line of every qubit
            @return: SampleSet
        '''
        J = lattice.couplers() if couplers is None else np.asarray(couplers, dtype=float)
        if J.shape != (lattice.n_bonds,):
            raise ConfigError(f'Need {lattice.n_bonds} couplers, got {J.shape}')
        return self.sample_ising(lattice, J, self.fields(lattice, flux), reads, _as_seed(seed))

    @abstractmethod
    def sample_ising(self, lattice, couplers:np.ndarray, h:np.ndarray, reads:int, seed:int):
        '''
            reads of sum J_ij s_i s_j - sum h_i s_i with the given values
        '''
        pass

class GibbsSampler(Sampler):
    '''
        Heat-bath sampler at fixed temperature.

        @param burn_in: sweeps from a random start before the first read
        @param thin: sweeps between reads of one chain
        @param chains: independent chains, one per read when None
    '''
    def __init__(self, temperature:float=1.0, burn_in:int=100, thin:int=10, chains:int=None,
                 flux_to_field:float=FluxToField):
        if not temperature > 0:
            raise ConfigError(f'temperature must be positive, got {temperature}')
        if burn_in < 0 or thin < 1:
            raise ConfigError(f'Need burn_in >= 0 and thin >= 1, got {burn_in} and {thin}')
        self.temperature = temperature
        self.burn_in = burn_in
        self.thin = thin
        self.chains = chains
        self.flux_to_field = flux_to_field

    def sample_ising(self, lattice, couplers, h, reads, seed):
        if reads < 1:
            raise ConfigError(f'reads must be at least 1, got {reads}')
        nbr, via, deg = _neighbor_tables(lattice)
        rng = np.random.Generator(np.random.Philox(seed))
        beta = 1.0 / self.temperature
        chains = reads if self.chains is None else min(self.chains, reads)
        per_chain = -(-reads // chains)
        couplers = np.ascontiguousarray(couplers, dtype=float)
        h = np.ascontiguousarray(h, dtype=float)

        out = np.empty((chains * per_chain, lattice.n_sites), dtype=np.int8)
        row = 0
        for c in range(chains):
            spins = np.where(rng.random(lattice.n_sites) < 0.5, 1, -1).astype(np.int64)
            _heat_bath(spins, nbr, via, deg, couplers, h, beta, rng.random((self.burn_in, lattice.n_sites)))
            for r in range(per_chain):
                if r:
                    _heat_bath(spins, nbr, via, deg, couplers, h, beta, rng.random((self.thin, lattice.n_sites)))
                out[row] = spins
                row += 1
        md = lattice.metadata()
        md.update({'seed': seed, 'sampler': 'gibbs', 'temperature': self.temperature})
        return SampleSet(out[:reads], md)

    def __repr__(self):
        return f'<GibbsSampler T={self.temperature} burn_in={self.burn_in}>'

class QuenchSampler(Sampler):
    '''
        Reads from an exact quench, for lattices of up to 20 qubits.
    '''
    def __init__(self, t_a:float=8.0, dt:float=0.05, schedule=None, flux_to_field:float=FluxToField):
        self.params = QuenchParams(t_a=t_a, dt=dt)
        self.schedule = schedule if schedule is not None else default_schedule()
        self.flux_to_field = flux_to_field

    def sample_ising(self, lattice, couplers, h, reads, seed):
        if lattice.n_sites > min(QuenchSamplerQubits, MaxQubits):
            raise ConfigError(f'QuenchSampler handles up to {QuenchSamplerQubits} qubits, '
                              f'lattice has {lattice.n_sites}; use GibbsSampler')
        lat = lattice.with_couplers(couplers)
        engine = QuenchEngine(lat, self.schedule, h=h)
        final = engine.evolve(init_state(lat.n_sites), self.params)
        return sample(final, reads, seed, lattice=lat, metadata={'t_a': self.params.t_a, 'sampler': 'quench'})

    def __repr__(self):
        return f'<QuenchSampler t_a={self.params.t_a}>'

class MockSampler(Sampler):
    '''
        A base sampler seen through hidden miscalibration.

        @param bias: hidden field per qubit
        @param gain: hidden multiplicative coupler error per bond
        @param line_errors: hidden timing error per anneal line
        @param lam: coupler change per unit of net line offset
    '''
    def __init__(self, base:Sampler, bias=None, gain=None, line_errors=None, lam:float=1.0):
        self.base = base
        self.bias = None if bias is None else np.asarray(bias, dtype=float)
        self.gain = None if gain is None else np.asarray(gain, dtype=float)
        self.line_errors = None if line_errors is None else np.asarray(line_errors, dtype=float)
        self.lam = lam
        self.flux_to_field = base.flux_to_field

    @classmethod
    def with_errors(cls, base:Sampler, lattice, bias:float=0.05, gain_error:float=0.1,
                    line_error:float=0.0, n_lines:int=8, seed:int=0, lam:float=1.0):
        '''
            Biases uniform in [-bias, bias], one random bond at gain
            1 - gain_error, line errors uniform in [-line_error, line_error]
            with zero mean.
        '''
        rng = np.random.Generator(np.random.Philox(seed))
        b = rng.uniform(-bias, bias, size=lattice.n_sites)
        g = np.ones(lattice.n_bonds)
        if gain_error:
            g[rng.integers(0, lattice.n_bonds)] = 1.0 - gain_error
        e = rng.uniform(-line_error, line_error, size=n_lines)
        e -= e.mean()
        return cls(base, b, g, e, lam)

    def hidden_bad_bonds(self):
        if self.gain is None:
            return np.zeros(0, dtype=np.int64)
        return np.flatnonzero(self.gain != 1.0)

    def effective(self, lattice, couplers, flux=None, offsets=None, lines=None):
        '''
            (J, h) the base sampler actually sees
        '''
        J = lattice.couplers() if couplers is None else np.array(couplers, dtype=float)
        h = self.base.fields(lattice, flux)
        if self.bias is not None:
            h = h + self.bias
        if self.gain is not None:
            J = J * self.gain
        if lines is not None and (offsets is not None or self.line_errors is not None):
            lines = np.asarray(lines)
            n_lines = int(lines.max()) + 1
            net = np.zeros(n_lines)
            if self.line_errors is not None:
                net[:len(self.line_errors)] += self.line_errors[:n_lines]
            if offsets is not None:
                net += np.asarray(offsets, dtype=float)[:n_lines]
            if np.any(net):
                a, b = lattice.bonds.endpoints()
                la, lb = lines[a], lines[b]
                scale = (1.0 - self.lam*net[la]) * np.where(la != lb, 1.0 - self.lam*net[lb], 1.0)
                J = J * scale
        return J, h

    def sample(self, lattice, reads:int, seed, couplers=None, flux=None, offsets=None, lines=None):
        J, h = self.effective(lattice, couplers, flux, offsets, lines)
        if J.shape != (lattice.n_bonds,):
            raise ConfigError(f'Need {lattice.n_bonds} couplers, got {J.shape}')
        return self.base.sample_ising(lattice, J, h, reads, _as_seed(seed))

    def sample_ising(self, lattice, couplers, h, reads, seed):
        return self.base.sample_ising(lattice, couplers, h, reads, seed)

    def __repr__(self):
        return f'<MockSampler over {self.base}>'
