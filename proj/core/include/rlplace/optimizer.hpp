#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rlplace/netlist.hpp"
#include "rlplace/objective.hpp"

namespace rlplace {

struct RbsmConfig {
    int iter_max = 200;
    int inner_steps = 25;
    double lr0 = 0.1;
    double gamma0 = 1000.0;
    double alpha = 5.0;            // mean-field force coefficient
    double batch_fraction = 0.2;   // 1/5 of the nets per batch
    double temperature = 0.0;      // <= 0 means max(1, mean degree)
    double eps_hpwl = 1e-4;
    double eps_overlap = 0.02;
    std::uint64_t seed = 0;
    bool perturb = true;
    bool adaptive_gamma_on = true;
    bool uniform_batch = false;    // ablation: uniform instead of degree-weighted
    double gamma_fixed = 10000.0;  // used when adaptive_gamma_on is false
    // When false, the penalty split only touches pairs incident to the
    // sampled batch; full-pair variant for ablation.
    bool penalty_full_pairs = false;

    void validate() const;
};

struct IterationRecord {
    double hpwl = 0.0;
    double overlap_area = 0.0;
    double overlap_ratio = 0.0;
    double objective = 0.0;
    double lr = 0.0;
    double wall_time_s = 0.0;
};

using IterationTrace = std::vector<IterationRecord>;

struct RunResult {
    Placement placement;
    IterationTrace trace;
};

// Per-cell/per-pair penalty weights from the ratio of wirelength to
// penalty partials, ceiled and floored at 1; gamma0 where the penalty
// subgradient vanishes.
PenaltyWeights adaptive_gamma(const Netlist& netlist, const Region& region,
                              const Placement& placement,
                              std::span<const CellPair> pairs, double gamma0);

// g <- g + eps * ||g|| * eta with eta standard Gaussian, eps = 0.2/k^3.
void perturb_gradient(std::vector<double>& grad_x, std::vector<double>& grad_y,
                      int k, std::mt19937_64& rng);

// Cosine annealing: lr0 * (1 + cos(pi k / iter_max)) / 2.
double lr_schedule(double lr0, int k, int iter_max);

// The random batch splitting solver: operator-split stochastic
// subgradient descent with adaptive gamma, mean-field force, Gaussian
// perturbation and cosine annealing.
RunResult rbsm_run(const Netlist& netlist, const Region& region,
                   const RbsmConfig& config);

// Full-batch subgradient baseline: fixed gamma = 1000, no sampling, no
// perturbation, no mean-field force; same schedule and stopping rule.
RunResult gd_run(const Netlist& netlist, const Region& region,
                 const RbsmConfig& config);

// RBSM pipeline with ADAM moment estimates driving both split updates.
RunResult adam_run(const Netlist& netlist, const Region& region,
                   const RbsmConfig& config);

}  // namespace rlplace
