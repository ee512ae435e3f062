from fquench.lattice.cylinder import (Lattice, LatticeFile, build_cylinder, build_ring, build_pair, build_column,
                                     boundary_mask)
from fquench.lattice.logical import LogicalLattice, contract_to_triangular
from fquench.lattice.sublattice import Scheme, SublatticeMap, assign_sublattices, available_schemes
from fquench.lattice.orbit import Orbit, OrbitPartition, compute_orbits
