#include "rlplace/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rlplace {

SamplingPlan build_plan(const std::vector<int>& degrees, double T, int batch_size) {
    if (T <= 0.0) throw std::invalid_argument("sampling temperature must be > 0");
    if (degrees.empty()) throw std::invalid_argument("no nets to sample");
    if (batch_size < 1 || batch_size > static_cast<int>(degrees.size()))
        throw std::invalid_argument("batch size out of range");

    SamplingPlan plan;
    plan.temperature = T;
    plan.batch_size = batch_size;

    const int dmax = *std::max_element(degrees.begin(), degrees.end());
    plan.probabilities.resize(degrees.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        plan.probabilities[i] = std::exp((degrees[i] - dmax) / T);
        sum += plan.probabilities[i];
    }
    for (double& p : plan.probabilities) p /= sum;
    return plan;
}

SamplingPlan build_uniform_plan(int num_nets, int batch_size) {
    return build_plan(std::vector<int>(num_nets, 0), 1.0, batch_size);
}

std::vector<int> sample_batch(const SamplingPlan& plan, std::mt19937_64& rng) {
    const int m = static_cast<int>(plan.probabilities.size());
    // Weighted sampling without replacement via exponential keys
    // (Efraimidis-Spirakis); the top-k order matches sequential
    // draw-and-renormalize.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<double, int>> keys(m);
    for (int i = 0; i < m; ++i) {
        double u = unif(rng);
        while (u <= 0.0) u = unif(rng);
        keys[i] = {std::log(u) / plan.probabilities[i], i};
    }
    std::partial_sort(keys.begin(), keys.begin() + plan.batch_size, keys.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> batch(plan.batch_size);
    for (int i = 0; i < plan.batch_size; ++i) batch[i] = keys[i].second;
    return batch;
}

double default_temperature(const std::vector<int>& degrees) {
    if (degrees.empty()) return 1.0;
    const double mean =
        std::accumulate(degrees.begin(), degrees.end(), 0.0) / degrees.size();
    return std::max(1.0, mean);
}

}  // namespace rlplace
