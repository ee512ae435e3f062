'''
Exception types raised across fquench.

ConfigError is a ValueError so callers that only know about
bad arguments still catch it.  NumericalError marks a broken
numerical contract (norm drift, impossible windings, fits 
that never settled).

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''

class ConfigError(ValueError):
    '''
        Bad parameters, files or dimensions.  Message should name
        the offending value and what was expected of it.
    '''
    pass

class NumericalError(ArithmeticError):
    pass

class PeakFitError(NumericalError):
    '''
        Pseudo-Voigt fit could not find a peak, or did not converge.
    '''
    pass

class SamplerError(NumericalError):
    '''
        A sampler call failed inside an iterative run.
    '''
    def __init__(self, iteration:int, cause:Exception):
        super().__init__(f'Sampler failed at iteration {iteration}: {cause}')
        self.iteration = iteration
        self.cause = cause
