'''
Kibble-Zurek reference exponents.

For a quench through a continuous transition with exponents nu, beta, z
in d dimensions, the order parameter at the end of the anneal grows as
t_a**((1 - beta/nu) / (z + 1/nu)), the defect density decays as
t_a**(-d nu / (1 + z nu)) and the correlation length grows as
t_a**(nu / (1 + z nu)).

    kzm_exponents(**UniversalityConstants['3d_xy'])

Created on Oct 19, 2026

@author: frustrated-quench contributors
'''
from dataclasses import dataclass, asdict
import math
from fquench.errors import ConfigError

UniversalityConstants = {
    # quantum 2D triangular/Villain transition, classical 3D XY class
    '3d_xy': {'nu': 0.6717, 'beta': 0.3486, 'z': 1.0, 'd': 2},
    # transverse-field Ising chain, classical 2D Ising class
    '2d_ising': {'nu': 1.0, 'beta': 0.125, 'z': 1.0, 'd': 1},
}

@dataclass(frozen=True)
class KzmPrediction:
    nu: float
    beta: float
    z: float
    d: int
    order_parameter: float
    defects: float
    length: float

    def as_dict(self):
        return asdict(self)

def kzm_exponents(nu:float, beta:float, z:float, d:int):
    '''
        @return: KzmPrediction; nu=math.inf gives the limits
        (order_parameter 1/z, defects -d/z, length 1/z)
    '''
    for name, v in (('nu', nu), ('z', z), ('d', d)):
        if not v > 0:
            raise ConfigError(f'{name} must be positive, got {v}')
    if beta < 0:
        raise ConfigError(f'beta must not be negative, got {beta}')

    if math.isinf(nu):
        return KzmPrediction(nu, beta, z, d, 1.0/z, -d/z, 1.0/z)
    op = (1.0 - beta/nu) / (z + 1.0/nu)
    defects = -d*nu / (1.0 + z*nu)
    length = nu / (1.0 + z*nu)
    return KzmPrediction(nu, beta, z, d, op, defects, length)

def kzm_for(name:str):
    try:
        return kzm_exponents(**UniversalityConstants[name])
    except KeyError:
        raise ConfigError(f"No universality constants named '{name}', have {', '.join(UniversalityConstants)}")

def coarsening_exponents():
    '''
        Domain coarsening of a non-conserved XY field: the defect density
        falls as t**-1 and the length grows as t**(1/2), both up to
        logarithmic corrections.
    '''
    return {'defects': -1.0, 'length': 0.5}
