'''
The subcommands.  Each takes a resolved RunConfig, writes its outputs
and run.cfg into the output directory and returns the paths written.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from functools import partial
import multiprocessing as mp
import os
import numpy as np
import pandas as pd
from scipy import stats
from tqdm import tqdm
from fquench.errors import ConfigError
from fquench.model_template import couplers_for
from fquench.schedule import default_schedule, load_schedule
from fquench.lattice import (build_cylinder, build_ring, contract_to_triangular, Scheme,
                             available_schemes)
from fquench.quench import QuenchEngine, QuenchParams, SampleSet, init_state, sample, MaxQubits
from fquench.clockmc import run_coarsening
from fquench.analysis import (order_parameters, defect_table, frustrated_bond_density, frustration_floor,
                              structure_factor, correlation_lengths, fit_power_law, batch_error,
                              kzm_for, coarsening_exponents)
from fquench.shim import (GibbsSampler, QuenchSampler, MockSampler, ShimConfig, ShimState,
                          measure, run_shim, calibrate_offsets_on_ring, iteration_seed)
from fquench.cli.config import RunConfig, RunConfigFile, ConfigFileName
from fquench.cli.tables import output_path, write_table
from fquench.cli import plotting
import logging
log = logging.getLogger(__name__)

LatticeKeys = ('lx', 'ly', 'j1', 'j2', 'model', 'periodic_x')
ModelScheme = {'triangular': Scheme.TRI, 'villain': Scheme.VIL}
RingQubits = 64
# spawn key of the before/after evaluation reads, beyond any iteration index
EvaluationKey = 1 << 31
MinFitPoints = 3

def _progress():
    return logging.getLogger().getEffectiveLevel() <= logging.INFO

def _write_config(config:RunConfig, directory:str):
    path = output_path(directory, ConfigFileName)
    RunConfigFile.from_config(config).write(path)
    return path

def _metadata(config:RunConfig, **extra):
    md = {'command': config.command, 'config_hash': config.config_hash(), 'seed': config.seed}
    md.update(extra)
    return md

def sample_file_name(t_a:float):
    return f'samples_ta{t_a:.4g}.txt'

def build_lattice(config:RunConfig):
    kind, j1, j2 = couplers_for(config.model, config.j1, config.j2)
    return build_cylinder(config.lx, config.ly, j1, j2, kind)

def point_seed(seed:int, index:int):
    '''
        Sampling seed of the index-th sweep point
    '''
    return iteration_seed(seed, index)

def _quench_point(job, lattice, schedule, dt:float, reads:int, metadata:dict):
    index, t_a, seed = job
    params = QuenchParams(t_a=t_a, dt=dt, seed=seed, reads=reads)
    engine = QuenchEngine(lattice, schedule)
    final = engine.evolve(init_state(lattice.n_sites), params)
    md = dict(metadata)
    md.update({'t_a': t_a, 'dt': dt, 'point': index})
    return sample(final, reads, seed, lattice=lattice, metadata=md)

def quench_sweep(lattice, schedule, ta:list, dt:float, reads:int, seed:int, metadata:dict, threads:int=1):
    '''
        One SampleSet per t_a, in the order of ta.  Results do not
        depend on threads.
    '''
    jobs = [(i, float(t), point_seed(seed, i)) for i, t in enumerate(ta)]
    run = partial(_quench_point, lattice=lattice, schedule=schedule, dt=dt, reads=reads, metadata=metadata)
    if threads > 1 and len(jobs) > 1:
        with mp.Pool(min(threads, len(jobs))) as pool:
            return list(tqdm(pool.imap(run, jobs), total=len(jobs), disable=not _progress(), desc='t_a'))
    return [run(job) for job in tqdm(jobs, disable=not _progress(), desc='t_a')]

def _check_cap(lattice):
    if lattice.n_sites > MaxQubits:
        raise ConfigError(f'{lattice} has {lattice.n_sites} qubits, the exact quench handles at most '
                          f'{MaxQubits}; for large lattices run `fquench coarsen`, the classical clock '
                          f'Monte Carlo')

def cmd_quench(config:RunConfig):
    lattice = build_lattice(config)
    _check_cap(lattice)
    schedule = load_schedule(config.schedule) if config.schedule else default_schedule()
    directory = config.resolved_output_dir()
    log.info(f'Quenching {lattice} at t_a={config.ta} with {config.reads} reads each')
    md = _metadata(config, schedule=schedule.name)
    sets = quench_sweep(lattice, schedule, config.ta, config.dt, config.reads, config.seed, md, config.threads)
    paths = []
    for samples in sets:
        path = output_path(directory, sample_file_name(samples.t_a))
        samples.write(path)
        paths.append(path)
    paths.append(_write_config(config, directory))
    return paths

def cmd_coarsen(config:RunConfig):
    directory = config.resolved_output_dir()
    result = run_coarsening(config.l, config.replicas, config.steps, config.seed,
                            workers=config.threads, progress=_progress())
    frame = result.to_frame()
    md = _metadata(config, l=config.l, replicas=config.replicas, steps=config.steps)
    paths = [write_table(output_path(directory, 'coarsening.csv'), frame, md)]

    window = (config.window[0], min(config.window[1], config.steps))
    fits = dict()
    if config.steps >= MinFitPoints and window[1] - window[0] + 1 >= MinFitPoints:
        fits = {k: v for k, v in result.exponents(window).items() if v is not None}
        reference = coarsening_exponents()
        rows = [{'quantity': k, **fit.as_dict(), 'reference': reference['length'] if k == 'xi' else np.nan}
                for k, fit in fits.items()]
        paths.append(write_table(output_path(directory, 'fits.csv'), pd.DataFrame(rows), md))
    else:
        log.warning(f'Steps {config.steps} too few for a fit over {config.window}')
    if config.plots:
        paths.append(plotting.plot_coarsening(frame, fits, coarsening_exponents(),
                                              output_path(directory, 'coarsening.svg')))
    paths.append(_write_config(config, directory))
    return paths

def _lattice_key(samples:SampleSet):
    return tuple(samples.metadata.get(k) for k in LatticeKeys)

def load_consistent(paths:list):
    '''
        Read sample files that must share one lattice.

        @return: list of SampleSets in the order given
    '''
    if not paths:
        raise ConfigError('No sample files given')
    sets = []
    for path in paths:
        if not os.path.exists(path):
            raise FileNotFoundError(f"Sample file '{path}' does not exist")
        sets.append(SampleSet.read(path))
    ref = _lattice_key(sets[0])
    offenders = [f"{p} ({', '.join(f'{k}={v}' for k, v in zip(LatticeKeys, _lattice_key(s)))})"
                 for p, s in zip(paths, sets) if _lattice_key(s) != ref]
    if offenders:
        expected = ', '.join(f'{k}={v}' for k, v in zip(LatticeKeys, ref))
        raise ConfigError(f"Inputs mix lattices; {paths[0]} has {expected} but: {'; '.join(offenders)}")
    return sets

def schemes_for(lattice):
    '''
        Order parameters worth reporting: the model's own scheme when
        the lattice supports it, every available one otherwise.
    '''
    available = available_schemes(lattice)
    own = ModelScheme.get(lattice.model_kind)
    if own is not None:
        if own in available:
            return [own]
        log.warning(f'{lattice} does not support the {own.name.lower()} order parameter')
    return available

def observables(samples:SampleSet, lattice, logical=None, exclude_boundary:int=0, batch:int=100):
    '''
        One row of observables for a SampleSet.
    '''
    row = {'t_a': samples.t_a, 'reads': samples.n_reads}
    row.update(order_parameters(samples, schemes_for(lattice), exclude_boundary, lattice, batch).summary())
    if lattice.model_kind == 'triangular' and logical is not None:
        defects = defect_table(samples, logical)
        density = defects['density'].dropna().to_numpy()
        if len(density) < len(defects):
            log.warning(f'{len(defects) - len(density)} read(s) at t_a={samples.t_a} have every loop next to a degenerate face')
        row.update({'n_vortex': float(defects['n_vortex'].mean()), 'n_antivortex': float(defects['n_antivortex'].mean()),
                    'defect_density': float(density.mean()) if len(density) else float('nan'),
                    'defect_density_err': batch_error(density, batch),
                    'defect_loops_skipped': float(defects['skipped'].mean())})
        # loops next to all-equal triangles counted with the inherited phases
        filled = defect_table(samples, logical, skip_degenerate=False)['density'].to_numpy()
        row.update({'defect_density_filled': float(filled.mean()),
                    'defect_density_filled_err': batch_error(filled, batch)})
    elif lattice.model_kind == 'villain':
        residual = frustrated_bond_density(samples, lattice, frustration_floor(lattice))
        row.update({'residual_frustration': float(residual.mean()),
                    'residual_frustration_err': batch_error(residual, batch)})
    row['xi_x'], row['xi_y'] = correlation_lengths(samples, logical)
    return row

def reference_exponents(lattice):
    return kzm_for('2d_ising' if lattice.lx == 1 else '3d_xy')

def fit_observables(frame:pd.DataFrame, seed:int):
    '''
        Power-law fit of every positive observable against t_a.

        @return: (dict column -> PowerLawFit, fits DataFrame)
    '''
    if len(frame) < MinFitPoints:
        raise ConfigError(f'--fit needs at least {MinFitPoints} t_a points, got {len(frame)}')
    x = frame['t_a'].to_numpy(dtype=float)
    fits = dict()
    rows = []
    for col in plotting.KzmReference:
        if col not in frame.columns:
            continue
        y = frame[col].to_numpy(dtype=float)
        good = np.isfinite(y) & (y > 0)
        if good.sum() < MinFitPoints or len(np.unique(x[good])) < 2:
            log.warning(f'Skipping fit of {col}: only {int(good.sum())} usable points')
            continue
        fit = fit_power_law(x[good], y[good], seed=seed)
        fits[col] = fit
        rho = stats.spearmanr(x[good], y[good])[0]
        rows.append({'quantity': col, **fit.as_dict(), 'spearman': float(rho)})
    return fits, pd.DataFrame(rows)

def cmd_analyze(config:RunConfig):
    directory = config.resolved_output_dir()
    sets = load_consistent(config.inputs)
    lattice = sets[0].lattice()
    logical = None
    if Scheme.TRI in available_schemes(lattice) and lattice.model_kind == 'triangular':
        logical = contract_to_triangular(lattice)
    elif lattice.model_kind == 'triangular':
        log.warning(f'{lattice} cannot be labelled three ways, defects and the logical view are skipped')

    sets = sorted(sets, key=lambda s: (s.t_a is None, s.t_a or 0.0))
    rows = []
    paths = []
    for samples in tqdm(sets, disable=not _progress(), desc='analyze'):
        rows.append(observables(samples, lattice, logical, config.exclude_boundary))
        if samples.t_a is not None:
            sf = structure_factor(samples, logical)
            paths.append(sf.write_grid(output_path(directory, f'sf_ta{samples.t_a:.4g}.txt')))
    frame = pd.DataFrame(rows)
    kzm = reference_exponents(lattice)
    md = _metadata(config, lattice=lattice.metadata(), inputs=[os.path.basename(p) for p in config.inputs],
                   kzm=kzm.as_dict())
    paths.insert(0, write_table(output_path(directory, 'observables.csv'), frame, md))

    fits = dict()
    if config.fit:
        fits, table = fit_observables(frame, config.seed)
        if len(table):
            table['kzm'] = [getattr(kzm, plotting.KzmReference[q]) for q in table['quantity']]
        paths.append(write_table(output_path(directory, 'fits.csv'), table, md))
    if config.plots:
        paths.append(plotting.plot_observables(frame, fits, kzm, output_path(directory, 'observables.svg')))
    paths.append(_write_config(config, directory))
    return paths

def make_sampler(config:RunConfig):
    if config.sampler == 'gibbs':
        return GibbsSampler(config.temperature)
    if config.sampler == 'quench':
        return QuenchSampler(t_a=config.ta[0], dt=config.dt)
    raise ConfigError(f"Unknown sampler '{config.sampler}', expected gibbs or quench")

def shim_summary(stats, orbits):
    m = np.abs(stats.magnetizations)
    return {'max_abs_m': float(m.max()), 'mean_abs_m': float(m.mean()),
            'mean_frustration': float(stats.frustrations.mean()),
            'max_orbit_spread': float(orbits.spread(stats.frustrations).max()),
            'line_spread': float(np.ptp(stats.line_frustration))}

def evaluate(sampler, lattice, state:ShimState, lines, orbits, shim:ShimConfig, reads:int, seed:int):
    samples = sampler.sample(lattice, reads, iteration_seed(seed, EvaluationKey), couplers=state.couplers,
                             flux=state.flux, offsets=state.offsets, lines=lines)
    return measure(samples, lattice, state.couplers, lines, orbits, shim.n_lines)

def cmd_shim(config:RunConfig):
    directory = config.resolved_output_dir()
    lattice = build_lattice(config)
    shim = ShimConfig()
    base = make_sampler(config)
    mock = MockSampler.with_errors(base, lattice, config.bias, config.gain_error, config.line_error,
                                   shim.n_lines, config.seed)
    log.info(f'Hidden gain error on bond(s) {mock.hidden_bad_bonds().tolist()}')

    initial = ShimState.initial(lattice, shim.n_lines)
    if config.ring_iterations:
        ring = build_ring(RingQubits, -1.0)
        ring_mock = MockSampler.with_errors(GibbsSampler(config.temperature), ring, config.bias, 0.0,
                                            0.0, shim.n_lines, config.seed + 1)
        ring_mock.line_errors = mock.line_errors
        offsets = calibrate_offsets_on_ring(ring_mock, RingQubits, config.ring_iterations, config.samples,
                                            config.seed, shim, progress=_progress())
        initial = ShimState.initial(lattice, shim.n_lines, offsets)

    history = run_shim(mock, lattice, config.iterations, config.samples, config.seed, shim, initial,
                       config.checkpoint, progress=_progress())
    lines = history.lines
    before = evaluate(mock, lattice, history.initial, lines, history.orbits, shim, config.samples, config.seed)
    after = evaluate(mock, lattice, history.final, lines, history.orbits, shim, config.samples, config.seed)

    md = _metadata(config, lattice=lattice.metadata(), iterations=history.iterations)
    frames = history.to_frames()
    paths = [write_table(output_path(directory, f'shim_{name}.csv'), frames[name], md)
             for name in ('flux', 'couplers', 'offsets')]
    paths.append(write_table(output_path(directory, 'shim_convergence.csv'), frames['report'], md))
    report = pd.DataFrame([{'stage': 'before', **shim_summary(before, history.orbits)},
                           {'stage': 'after', **shim_summary(after, history.orbits)}])
    paths.append(write_table(output_path(directory, 'shim_report.csv'), report, md))
    paths.append(plotting.plot_shim_report(before.magnetizations, after.magnetizations,
                                           history.orbit_spread(), output_path(directory, 'shim_report.svg')))
    paths.append(_write_config(config, directory))
    return paths

def cmd_ratio_sweep(config:RunConfig):
    '''
        |m_afm|, |m_tri| and |m_vil| over J2/J1 at fixed j1, for every t_a
    '''
    directory = config.resolved_output_dir()
    j1 = 0.9 if config.j1 is None else float(config.j1)
    schedule = load_schedule(config.schedule) if config.schedule else default_schedule()
    rows = []
    for r, ratio in enumerate(config.ratios):
        lattice = build_cylinder(config.lx, config.ly, j1, ratio * j1)
        _check_cap(lattice)
        sets = quench_sweep(lattice, schedule, config.ta, config.dt, config.reads,
                            iteration_seed(config.seed, r), {}, config.threads)
        schemes = available_schemes(lattice)
        for samples in sets:
            row = {'ratio': ratio, 'j2': ratio * j1, 't_a': samples.t_a}
            result = order_parameters(samples, schemes, config.exclude_boundary, lattice)
            for key in ('afm', 'tri', 'vil'):
                row[f'm_{key}'] = result.mean(key) if key in result else np.nan
                row[f'm_{key}_err'] = result.error(key) if key in result else np.nan
            rows.append(row)
    frame = pd.DataFrame(rows)
    md = _metadata(config, lx=config.lx, ly=config.ly, j1=j1)
    paths = [write_table(output_path(directory, 'ratio_sweep.csv'), frame, md)]
    if config.plots:
        paths.append(plotting.plot_ratio_sweep(frame, output_path(directory, 'ratio_sweep.svg')))
    paths.append(_write_config(config, directory))
    return paths

Commands = {
    'quench': cmd_quench,
    'coarsen': cmd_coarsen,
    'analyze': cmd_analyze,
    'shim': cmd_shim,
    'ratio-sweep': cmd_ratio_sweep,
}
