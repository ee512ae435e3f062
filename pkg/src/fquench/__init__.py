'''
Quench dynamics and ordering of frustrated transverse-field Ising cylinders.

Example usage: build a lattice, anneal it and look at the reads

import fquench
lattice = fquench.build_cylinder(3, 6, 0.9, -2.0)    # triangular preset
engine = fquench.QuenchEngine(lattice, fquench.default_schedule())
final = engine.evolve(fquench.init_state(lattice.n_sites), fquench.QuenchParams(t_a=8.0))
samples = fquench.sample(final, 1000, seed=1, lattice=lattice)

Samples then go through fquench.analysis

from fquench.analysis import order_parameters, defect_counts, correlation_lengths
order_parameters(samples, ['tri']).m_tri
defect_counts(samples)

The lattice has plenty to explore with TAB-completion

lattice.bonds.<TAB><TAB>
fquench.compute_orbits(lattice).<TAB><TAB>

orbits are collections that act like lists but also have attributes, one per
orbit name

for orbit in fquench.compute_orbits(lattice):
    print(orbit.name, len(orbit.members))

Large lattices are out of reach of the exact quench; the classical clock
model coarsening is

result = fquench.run_coarsening(l=120, replicas=100, steps=1000, workers=4)
result.exponents()

and the shim loop lives in fquench.shim.  The command line tool `fquench`
strings all of it together: see the README.


Created on Oct 19, 2026

@author: frustrated-quench contributors

'''
VERSION='0.3.0'
from fquench.lattice import build_cylinder, build_ring, Lattice, compute_orbits, contract_to_triangular
from fquench.schedule import default_schedule, load_schedule
from fquench.quench import QuenchEngine, QuenchParams, SampleSet, init_state, sample
from fquench.clockmc import run_coarsening
