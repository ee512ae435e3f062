'''
Coupler presets for the named models.

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''

from fquench.errors import ConfigError

ModelTemplate = {
    # contracted to an AFM triangular lattice, J2 strong FM binds the pairs
    'triangular': {'j1': 0.9, 'j2': -2.0},

    # fully frustrated square lattice
    'villain': {'j1': 0.9, 'j2': -0.9},
}

MODEL_KINDS = ('triangular', 'villain', 'custom')

def couplers_for(model:str, j1:float=None, j2:float=None):
    '''
        Resolve (j1, j2) for a model name.

        @param model: 'triangular', 'villain' or 'custom'
        @param j1: override, required for custom
        @param j2: override, required for custom

        @note: overriding a named preset turns it into a custom model
    '''
    if model not in MODEL_KINDS:
        raise ConfigError(f"Unknown model '{model}', expected one of {', '.join(MODEL_KINDS)}")
    if model == 'custom':
        if j1 is None or j2 is None:
            raise ConfigError('custom model needs both j1 and j2')
        return 'custom', float(j1), float(j2)

    preset = ModelTemplate[model]
    rj1 = preset['j1'] if j1 is None else float(j1)
    rj2 = preset['j2'] if j2 is None else float(j2)
    if rj1 != preset['j1'] or rj2 != preset['j2']:
        return 'custom', rj1, rj2
    return model, rj1, rj2

def model_kind_for(j1:float, j2:float):
    for name, preset in ModelTemplate.items():
        if preset['j1'] == j1 and preset['j2'] == j2:
            return name
    return 'custom'
