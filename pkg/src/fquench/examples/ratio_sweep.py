'''
    A small phase diagram: order parameter magnitudes across J2/J1 on a
    3x6 cylinder, which supports both the AFM and the three sublattice order.

    run it, pick anneal time, read the table.


@author: frustrated-quench contributors

'''
import numpy as np
from fquench import build_cylinder, default_schedule, QuenchEngine, QuenchParams, init_state, sample
from fquench.lattice import available_schemes
from fquench.analysis import order_parameters

def ratio_sweep(ratios, t_a:float=8.0, lx:int=3, ly:int=6, j1:float=0.9, reads:int=1000, seed:int=1):
    '''
        @return: list of (ratio, OrderParamResult)
    '''
    out = []
    for ratio in ratios:
        lattice = build_cylinder(lx, ly, j1, ratio*j1)
        engine = QuenchEngine(lattice, default_schedule())
        final = engine.evolve(init_state(lattice.n_sites), QuenchParams(t_a=t_a))
        samples = sample(final, reads, seed, lattice=lattice, metadata={'t_a': t_a})
        out.append((ratio, order_parameters(samples, available_schemes(lattice), lattice=lattice)))
    return out


if __name__ == '__main__':
    ta = input("Anneal time [8]: ")
    t_a = float(ta) if len(ta) else 8.0
    print(f"{'J2/J1':>8} {'|m_afm|':>9} {'|m_tri|':>9}")
    for ratio, result in ratio_sweep(np.linspace(-3.0, -0.5, 6), t_a):
        print(f'{ratio:8.2f} {result.m_afm:9.4f} {result.m_tri:9.4f}')
