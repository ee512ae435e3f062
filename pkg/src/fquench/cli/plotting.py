'''
SVG figures for the CLI.  The CSVs written next to them carry the data;
these are for looking at.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import logging
log = logging.getLogger(__name__)

# observable column -> KzmPrediction attribute of its reference exponent
KzmReference = {
    'm_afm': 'order_parameter',
    'm_tri': 'order_parameter',
    'm_vil': 'order_parameter',
    'defect_density': 'defects',
    'defect_density_filled': 'defects',
    'residual_frustration': 'defects',
    'xi_x': 'length',
    'xi_y': 'length',
}

def _save(fig, path:str):
    fig.tight_layout()
    # no date stamp, so reruns give the same file
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    log.info(f'Wrote {path}')
    return path

def _reference_line(ax, x, anchor_y, exponent, label):
    x = np.asarray(x, dtype=float)
    ax.plot(x, anchor_y * (x / x[0])**exponent, linestyle='--', color='k', alpha=0.6, label=label)

def plot_observables(frame, fits:dict, kzm, path:str):
    '''
        One log-log panel per observable against t_a, with the fitted
        power law and the KZM slope anchored at the first point.
    '''
    # log axes need something positive to show
    columns = [c for c in KzmReference if c in frame.columns and np.any(frame[c].to_numpy(dtype=float) > 0)]
    fig, axes = plt.subplots(1, max(1, len(columns)), figsize=(4*max(1, len(columns)), 3.5), squeeze=False)
    x = frame['t_a'].to_numpy(dtype=float)
    for ax, col in zip(axes[0], columns):
        y = frame[col].to_numpy(dtype=float)
        err = frame[f'{col}_err'].to_numpy(dtype=float) if f'{col}_err' in frame.columns else None
        ax.errorbar(x, y, yerr=err, marker='o', linestyle='none', label=col)
        fit = fits.get(col)
        if fit is not None:
            ax.plot(x, fit.predict(x), label=f'fit {fit.exponent:.2f}')
        good = np.isfinite(y) & (y > 0)
        if kzm is not None and good.any():
            slope = getattr(kzm, KzmReference[col])
            _reference_line(ax, x[good], y[good][0], slope, f'KZM {slope:.2f}')
        ax.set_xscale('log')
        ax.set_yscale('log')
        ax.set_xlabel('t_a')
        ax.set_ylabel(col)
        ax.legend(fontsize=8)
    return _save(fig, path)

def plot_coarsening(frame, fits:dict, reference:dict, path:str):
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.5))
    step = frame['step'].to_numpy(dtype=float)
    for ax, col, ref in ((axes[0], 'm', None), (axes[1], 'xi', reference.get('length'))):
        key = 'm_mean' if col == 'm' else 'xi'
        y = frame[key].to_numpy(dtype=float)
        ax.fill_between(step, frame[f'{col}_ci_lo'], frame[f'{col}_ci_hi'], alpha=0.3)
        ax.plot(step, y, label=key)
        fit = fits.get(col)
        if fit is not None:
            sel = (step >= fit.window[0]) & (step <= fit.window[1])
            ax.plot(step[sel], fit.predict(step[sel]), color='C1', label=f'fit {fit.exponent:.2f}')
        good = np.isfinite(y) & (y > 0)
        if ref is not None and good.any():
            _reference_line(ax, step[good], y[good][0], ref, f'coarsening {ref:.2f}')
        ax.set_xscale('log')
        ax.set_yscale('log')
        ax.set_xlabel('step')
        ax.legend(fontsize=8)
    return _save(fig, path)

def plot_shim_report(before, after, spread, path:str):
    '''
        @param before: per-qubit <m> with the initial controls
        @param after: per-qubit <m> with the final controls
        @param spread: (iterations, n_orbits) frustration spread per orbit
    '''
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.5))
    lim = max(np.abs(before).max(), np.abs(after).max(), 1e-3)
    bins = np.linspace(-lim, lim, 31)
    axes[0].hist(before, bins=bins, alpha=0.6, label='before')
    axes[0].hist(after, bins=bins, alpha=0.6, label='after')
    axes[0].set_xlabel('<m_i>')
    axes[0].set_ylabel('qubits')
    axes[0].legend(fontsize=8)
    spread = np.asarray(spread)
    if spread.size:
        it = np.arange(spread.shape[0])
        axes[1].plot(it, spread.max(axis=1), label='max over orbits')
        axes[1].plot(it, spread.mean(axis=1), label='mean over orbits')
        axes[1].legend(fontsize=8)
    axes[1].set_xlabel('iteration')
    axes[1].set_ylabel('orbit frustration spread')
    return _save(fig, path)

def plot_ratio_sweep(frame, path:str):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for t_a, group in frame.groupby('t_a'):
        for i, col in enumerate(c for c in ('m_afm', 'm_tri', 'm_vil') if c in group.columns):
            ax.plot(group['ratio'], group[col], marker='o', color=f'C{i}',
                    alpha=0.4 + 0.6*(t_a / frame['t_a'].max()), label=f'{col} t_a={t_a:.3g}')
    ax.set_xlabel('J2/J1')
    ax.set_ylabel('|m|')
    ax.legend(fontsize=6)
    return _save(fig, path)
