from fquench.quench.state import StateVector, init_state, basis_state, fidelity, MaxQubits
from fquench.quench.engine import (QuenchEngine, QuenchParams, GroundState, evolve, 
                                   exact_ground_state, ising_energies)
from fquench.quench.sampleset import SampleSet, sample
