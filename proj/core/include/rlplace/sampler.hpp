#pragma once

#include <random>
#include <vector>

namespace rlplace {

// Degree-weighted net sampling distribution, softmax over degrees with
// temperature T. Probabilities are computed with max subtraction so
// large degrees cannot overflow.
struct SamplingPlan {
    std::vector<double> probabilities;
    double temperature = 1.0;
    int batch_size = 1;
};

SamplingPlan build_plan(const std::vector<int>& degrees, double T, int batch_size);

// Uniform fallback for the ablation runs.
SamplingPlan build_uniform_plan(int num_nets, int batch_size);

// Draws batch_size distinct nets without replacement, proportional to
// the plan probabilities (sequential draw-and-renormalize semantics).
std::vector<int> sample_batch(const SamplingPlan& plan, std::mt19937_64& rng);

// Default temperature: max(1, mean degree), keeping exponents O(1)
// across circuit scales.
double default_temperature(const std::vector<int>& degrees);

}  // namespace rlplace
