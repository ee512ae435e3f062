'''
Pseudo-Voigt fits of structure factor peaks.

    V(x) = A [ eta G(x) + (1 - eta) L(x) ]

G and L are unit-area Gaussian and Lorentzian sharing the full width at
half maximum fwhm (sigma_G = fwhm / (2 sqrt(2 ln 2)), gamma_L = fwhm / 2).
The correlation length is xi = 1 / fwhm, with x in radians per lattice
constant.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
import math
from dataclasses import dataclass
import numpy as np
from lmfit import Minimizer, Parameters
from lmfit.lineshapes import gaussian, lorentzian
from fquench.errors import ConfigError, PeakFitError
import logging
log = logging.getLogger(__name__)

SigmaPerFwhm = 1.0 / (2.0*math.sqrt(2.0*math.log(2.0)))
MinPoints = 5
# peaks with less relative contrast than this are treated as flat
FlatTolerance = 1e-9
EtaBoundTolerance = 1e-3

def pseudo_voigt(x, amplitude:float, center:float, fwhm:float, eta:float):
    return amplitude * (eta*gaussian(x, 1.0, center, fwhm*SigmaPerFwhm)
                        + (1.0 - eta)*lorentzian(x, 1.0, center, fwhm/2.0))

@dataclass
class PeakFit:
    amplitude: float
    center: float
    fwhm: float
    eta: float
    chi2: float
    eta_at_bound: bool = False

    @property
    def xi(self):
        return 1.0 / self.fwhm

    def __call__(self, x):
        return pseudo_voigt(np.asarray(x, dtype=float), self.amplitude, self.center, self.fwhm, self.eta)

    def __repr__(self):
        return f'<PeakFit x0={self.center:.4g} fwhm={self.fwhm:.4g} eta={self.eta:.3f} xi={self.xi:.4g}>'

def _residual(pars, x, data):
    v = pars.valuesdict()
    return pseudo_voigt(x, v['amplitude'], v['center'], v['fwhm'], v['eta']) - data

def _half_width_guess(x:np.ndarray, y:np.ndarray, imax:int, base:float):
    half = base + (y[imax] - base)/2
    above = np.flatnonzero(y >= half)
    width = x[above.max()] - x[above.min()]
    if width <= 0:
        width = 2*np.median(np.diff(x))
    return width

def fit_pseudo_voigt(x, y, baseline:bool=False):
    '''
        Fit a single Pseudo-Voigt peak.

        @param x: at least 5 increasing positions bracketing the maximum
        @param y: data at x
        @param baseline: subtract min(y) before fitting
        @return: PeakFit
        @note: raises PeakFitError for flat data or a fit that does
        not converge
    '''
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ConfigError(f'Peak fit needs matching 1D x and y, got {x.shape} and {y.shape}')
    if len(x) < MinPoints:
        raise ConfigError(f'Peak fit needs at least {MinPoints} points, got {len(x)}')
    if baseline:
        y = y - y.min()

    base = float(min(y[0], y[-1]))
    imax = int(np.argmax(y))
    contrast = y[imax] - base
    if not np.isfinite(contrast) or contrast <= FlatTolerance*max(1.0, abs(y[imax])):
        raise PeakFitError('Data are flat, there is no peak to fit')
    if imax == 0 or imax == len(x) - 1:
        raise PeakFitError(f'Maximum sits at the edge x={x[imax]:.4g}, the peak is not bracketed')

    fwhm0 = _half_width_guess(x, y, imax, base)
    span = x[-1] - x[0]
    pars = Parameters()
    # peak height of the 50/50 mix is about 0.78/fwhm per unit area
    pars.add('amplitude', value=y[imax]*fwhm0/0.78, min=0)
    pars.add('center', value=x[imax], min=x[0], max=x[-1])
    pars.add('fwhm', value=fwhm0, min=1e-6*span, max=10*span)
    pars.add('eta', value=0.5, min=0.0, max=1.0)

    mini = Minimizer(_residual, pars, fcn_args=(x, y))
    out = mini.minimize(method='leastsq')
    if not out.success:
        raise PeakFitError(f'Pseudo-Voigt fit did not converge: {out.message}')

    v = out.params.valuesdict()
    at_bound = v['eta'] < EtaBoundTolerance or v['eta'] > 1 - EtaBoundTolerance
    if at_bound:
        log.warning(f"Pseudo-Voigt eta pinned at {v['eta']:.3g}")
    fit = PeakFit(v['amplitude'], v['center'], v['fwhm'], v['eta'], float(out.chisqr), at_bound)
    log.debug(f'{fit}')
    return fit
