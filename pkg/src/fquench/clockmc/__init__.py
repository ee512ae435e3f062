from fquench.clockmc.honeycomb import HoneycombLattice
from fquench.clockmc.dynamics import ClockConfig, energy, sweep, magnetization, domain_defects, random_config
from fquench.clockmc.coarsening import (CoarseningResult, MCDefaults, run_coarsening, replica_seeds, 
                                        correlation_function, fit_correlation_length, distance_bins)
