'''
    Kink density on a ferromagnetic ring after quenches of growing length,
    a one dimensional Kibble-Zurek check.

    1) pick a ring size (up to 20 qubits keeps it quick)

    2) run this script: each anneal time gets an exact quench and a batch of reads

    3) compare the fitted slope with the printed KZM exponent


@author: frustrated-quench contributors

'''
import numpy as np
from fquench import build_ring, default_schedule, QuenchEngine, QuenchParams, init_state, sample
from fquench.analysis import frustrated_bond_density, fit_power_law, kzm_for

def kink_densities(n:int, anneal_times, reads:int=2000, seed:int=1):
    '''
        Mean fraction of broken bonds per anneal time
    '''
    ring = build_ring(n, -1.0)
    engine = QuenchEngine(ring, default_schedule())
    out = []
    for i, t_a in enumerate(anneal_times):
        final = engine.evolve(init_state(n), QuenchParams(t_a=t_a))
        samples = sample(final, reads, seed + i, lattice=ring, metadata={'t_a': t_a})
        out.append(float(frustrated_bond_density(samples, ring).mean()))
    return np.array(out)

def kzm_ring(n:int=12, anneal_times=None, reads:int=2000):
    if anneal_times is None:
        anneal_times = np.geomspace(0.5, 8.0, 6)
    rho = kink_densities(n, anneal_times, reads)
    for t_a, r in zip(anneal_times, rho):
        print(f't_a={t_a:7.3f}  kinks/bond={r:.4f}')
    good = rho > 0
    if good.sum() >= 3:
        fit = fit_power_law(np.asarray(anneal_times)[good], rho[good])
        print(f'fitted exponent {fit.exponent:.3f} [{fit.ci[0]:.3f}, {fit.ci[1]:.3f}]')
    print(f'KZM expects {kzm_for("2d_ising").defects:.3f}')
    return rho


if __name__ == '__main__':
    size = input("Ring size [12]: ")
    n = int(size) if len(size) else 12
    if n > 20:
        print("That will take a while, the state vector doubles per qubit")
    kzm_ring(n)
