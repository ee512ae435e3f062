from fquench.shim.samplers import Sampler, GibbsSampler, QuenchSampler, MockSampler, FluxToField
from fquench.shim.controller import (ShimConfig, ShimState, ShimStatistics, ShimGains, anneal_lines,
                                     line_couplers, frustration_probability, measure, flux_shim_step,
                                     coupler_shim_step, offset_shim_step, normalize_couplers,
                                     apply_statistics)
from fquench.shim.runner import ShimHistory, run_shim, replay, calibrate_offsets_on_ring, iteration_seed
