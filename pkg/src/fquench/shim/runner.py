'''
The shim loop: sample with the current controls, measure, update.

    sampler = MockSampler.with_errors(GibbsSampler(), lattice)
    history = run_shim(sampler, lattice, iterations=1500, samples_per_iter=100, seed=1)
    history.final.flux
    frames = history.to_frames()

Iteration k samples with seed SeedSequence(seed, spawn_key=(k,)), and
a checkpoint holds the initial state plus every iteration's statistics,
so a resumed run reproduces the uninterrupted one exactly.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import json
import os
import numpy as np
import pandas as pd
from tqdm import tqdm
from fquench.errors import ConfigError, SamplerError
from fquench.lattice import compute_orbits, build_ring
from fquench.shim.controller import (ShimConfig, ShimState, ShimStatistics, anneal_lines,
                                     measure, apply_statistics)
import logging
log = logging.getLogger(__name__)

CheckpointVersion = 1

def iteration_seed(seed:int, k:int):
    return int(np.random.SeedSequence(seed, spawn_key=(k,)).generate_state(1, np.uint64)[0])

class ShimHistory:
    '''
        states[k] are the controls after k iterations; statistics[k] were
        measured with states[k] and produced states[k+1].
    '''
    def __init__(self, lattice, orbits, lines, config:ShimConfig, initial:ShimState):
        self.lattice = lattice
        self.orbits = orbits
        self.lines = lines
        self.config = config
        self.states = [initial]
        self.statistics = []

    @property
    def initial(self):
        return self.states[0]

    @property
    def final(self):
        return self.states[-1]

    @property
    def iterations(self):
        return len(self.statistics)

    def append(self, stats:ShimStatistics, state:ShimState):
        self.statistics.append(stats)
        self.states.append(state)

    def magnetizations(self):
        return np.array([s.magnetizations for s in self.statistics])

    def settled_magnetizations(self, window:int):
        '''
            Per-qubit <m> averaged over the last window iterations, the
            estimate the flux loop drives to zero.
        '''
        if not 0 < window <= len(self.statistics):
            raise ConfigError(f'Window {window} outside 1..{len(self.statistics)}')
        return self.magnetizations()[-window:].mean(axis=0)

    def frustrations(self):
        return np.array([s.frustrations for s in self.statistics])

    def orbit_spread(self):
        '''
            (iterations, n_orbits) max - min of f within each orbit
        '''
        return np.array([self.orbits.spread(s.frustrations) for s in self.statistics])

    def to_frames(self):
        '''
            pandas frames 'flux', 'couplers', 'offsets' and 'report',
            one row per state
        '''
        it = np.array([s.iteration for s in self.states])
        flux = pd.DataFrame(np.array([s.flux for s in self.states]),
                            columns=[f'q{i}' for i in range(self.lattice.n_sites)])
        flux.insert(0, 'iteration', it)

        couplers = np.array([s.couplers for s in self.states])
        by_orbit = pd.DataFrame({o.name: couplers[:, o.members].mean(axis=1) for o in self.orbits})
        by_orbit.insert(0, 'iteration', it)

        offsets = pd.DataFrame(np.array([s.offsets for s in self.states]),
                               columns=[f'line{l}' for l in range(len(self.initial.offsets))])
        offsets.insert(0, 'iteration', it)

        report = pd.DataFrame({'iteration': it[:-1]})
        if self.statistics:
            m = self.magnetizations()
            report['max_abs_m'] = np.abs(m).max(axis=1)
            report['mean_abs_m'] = np.abs(m).mean(axis=1)
            report['mean_frustration'] = self.frustrations().mean(axis=1)
            report['max_orbit_spread'] = self.orbit_spread().max(axis=1)
            report['line_spread'] = np.ptp(np.array([s.line_frustration for s in self.statistics]), axis=1)
        return {'flux': flux, 'couplers': by_orbit, 'offsets': offsets, 'report': report}

    def __repr__(self):
        return f'<ShimHistory {self.iterations} iterations on {self.lattice}>'

def replay(initial:ShimState, statistics, orbits, config:ShimConfig=None):
    '''
        Re-apply recorded statistics.

        @return: list of states, initial first
    '''
    config = config or ShimConfig()
    states = [initial]
    for stats in statistics:
        states.append(apply_statistics(states[-1], stats, orbits, config))
    return states

def _write_checkpoint(path:str, seed:int, reads:int, history:ShimHistory):
    data = {'version': CheckpointVersion, 'seed': seed, 'reads': reads,
            'lattice': history.lattice.metadata(),
            'config': history.config.as_dict(),
            'initial': history.initial.as_dict(),
            'final': history.final.as_dict(),
            'statistics': [s.as_dict() for s in history.statistics]}
    tmp = f'{path}.tmp'
    with open(tmp, 'w') as f:
        json.dump(data, f)
    os.replace(tmp, path)
    log.debug(f'Checkpoint at iteration {history.final.iteration} in {path}')

def _resume(path:str, lattice, seed:int, reads:int, config:ShimConfig, history:ShimHistory):
    with open(path, 'r') as f:
        data = json.load(f)
    if data.get('version') != CheckpointVersion:
        raise ConfigError(f"Checkpoint '{path}' has version {data.get('version')}, expected {CheckpointVersion}")
    if data['lattice'] != lattice.metadata():
        raise ConfigError(f"Checkpoint '{path}' is for lattice {data['lattice']}, not {lattice.metadata()}")
    if data['seed'] != seed or data['reads'] != reads:
        raise ConfigError(f"Checkpoint '{path}' used seed {data['seed']} and {data['reads']} reads per iteration")
    if ShimConfig.from_dict(data['config']) != config:
        raise ConfigError(f"Checkpoint '{path}' was written with a different shim config")

    initial = ShimState.from_dict(data['initial'])
    stats = [ShimStatistics.from_dict(s) for s in data['statistics']]
    states = replay(initial, stats, history.orbits, config)
    if not states[-1].equals(ShimState.from_dict(data['final'])):
        raise ConfigError(f"Checkpoint '{path}' does not replay to its own final state")
    history.states = states
    history.statistics = stats
    log.info(f'Resumed shim from {path} at iteration {states[-1].iteration}')

def run_shim(sampler, lattice, iterations:int, samples_per_iter:int=100, seed:int=0,
             config:ShimConfig=None, initial:ShimState=None, checkpoint:str=None,
             checkpoint_every:int=100, progress:bool=True):
    '''
        Shim lattice on sampler for iterations iterations.

        @param initial: starting controls, nominal couplers and zero
        flux/offsets when None
        @param checkpoint: JSON file resumed from when present and
        rewritten every checkpoint_every iterations and at the end
        @return: ShimHistory
    '''
    config = config or ShimConfig()
    if iterations < 0:
        raise ConfigError(f'iterations must not be negative, got {iterations}')
    if samples_per_iter < 1:
        raise ConfigError(f'samples_per_iter must be at least 1, got {samples_per_iter}')
    orbits = compute_orbits(lattice)
    lines = anneal_lines(lattice, config.n_lines)
    if initial is None:
        initial = ShimState.initial(lattice, config.n_lines)
    if len(initial.offsets) != config.n_lines:
        raise ConfigError(f'Initial state has {len(initial.offsets)} offsets for {config.n_lines} lines')
    history = ShimHistory(lattice, orbits, lines, config, initial)
    if checkpoint is not None and os.path.exists(checkpoint):
        _resume(checkpoint, lattice, seed, samples_per_iter, config, history)

    start = history.iterations
    log.info(f'Shimming {lattice} for {iterations} iterations x {samples_per_iter} reads with {sampler}')
    for k in tqdm(range(start, iterations), initial=start, total=iterations, disable=not progress, desc='shim'):
        state = history.final
        try:
            samples = sampler.sample(lattice, samples_per_iter, iteration_seed(seed, k),
                                     couplers=state.couplers, flux=state.flux,
                                     offsets=state.offsets, lines=lines)
        except Exception as e:
            log.error(f'Sampler failed at iteration {k}')
            raise SamplerError(k, e) from e
        stats = measure(samples, lattice, state.couplers, lines, orbits, config.n_lines)
        history.append(stats, apply_statistics(state, stats, orbits, config))
        if checkpoint is not None and (k + 1) % checkpoint_every == 0:
            _write_checkpoint(checkpoint, seed, samples_per_iter, history)

    if checkpoint is not None and history.iterations > start:
        _write_checkpoint(checkpoint, seed, samples_per_iter, history)
    return history

def calibrate_offsets_on_ring(sampler, n:int=64, iterations:int=500, samples_per_iter:int=100,
                              seed:int=0, config:ShimConfig=None, progress:bool=True):
    '''
        Offsets from flux and offset shimming of an n-qubit FM ring,
        whose couplers are all equivalent.

        @return: per-line offsets
    '''
    config = config or ShimConfig()
    ring_config = ShimConfig(**{**config.as_dict(), 'clip': config.clip,
                                'shim_flux': True, 'shim_couplers': False, 'shim_offsets': True})
    ring = build_ring(n, -1.0)
    history = run_shim(sampler, ring, iterations, samples_per_iter, seed, ring_config, progress=progress)
    log.info(f'Ring offsets: {np.array2string(history.final.offsets, precision=5)}')
    return history.final.offsets
