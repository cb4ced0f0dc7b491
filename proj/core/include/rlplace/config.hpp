#pragma once

#include <string>

#include "rlplace/optimizer.hpp"

namespace rlplace {

// Applies "key = value" lines from a config file onto an RbsmConfig.
// Keys mirror the RbsmConfig fields (iter_max, inner_steps, lr0,
// gamma0, alpha, batch_fraction, temperature, eps_hpwl, eps_overlap,
// seed, perturb, uniform_batch, adaptive_gamma, gamma_fixed,
// penalty_full_pairs). '#' starts a comment. Unknown keys are errors.
RbsmConfig load_config(const std::string& path, RbsmConfig base = {});

}  // namespace rlplace
