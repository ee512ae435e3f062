from fquench.analysis.fitting import (PowerLawFit, fit_power_law, f_statistic, f_test_interval,
                                     f_test_profile, FTestInterval, FTestProfile,
                                     batch_error, bootstrap_mean_ci)
from fquench.analysis.peakfit import PeakFit, fit_pseudo_voigt, pseudo_voigt
from fquench.analysis.kzm import (KzmPrediction, kzm_exponents, kzm_for, coarsening_exponents,
                                  UniversalityConstants)
from fquench.analysis.order import OrderParamResult, order_parameters, sublattice_magnetizations, MaxMagnitude
from fquench.analysis.defects import (DefectField, DefectCount, pseudospin_field, count_defects,
                                      defect_counts, defect_table, frustrated_bond_density, frustration_floor)
from fquench.analysis.structure import (StructureFactor, structure_factor, direct_structure_factor,
                                        peak_slices, continuous_slice, correlation_lengths)
