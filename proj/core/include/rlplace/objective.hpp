#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "rlplace/netlist.hpp"

namespace rlplace {

// Unordered movable-cell pair, stored with first < second.
struct CellPair {
    int a;
    int b;
    CellPair(int i, int j) : a(i < j ? i : j), b(i < j ? j : i) {}
    bool operator==(const CellPair&) const = default;
};

inline std::uint64_t pair_key(const CellPair& p) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.a)) << 32) |
           static_cast<std::uint32_t>(p.b);
}

struct PenaltyWeights {
    double gamma0 = 1000.0;
    std::vector<double> gamma_b;                      // per movable index
    std::unordered_map<std::uint64_t, double> gamma_ov;  // pair key -> weight

    static PenaltyWeights uniform(int n_movable, double gamma) {
        PenaltyWeights w;
        w.gamma0 = gamma;
        w.gamma_b.assign(n_movable, gamma);
        return w;
    }

    double pair_weight(const CellPair& p) const {
        auto it = gamma_ov.find(pair_key(p));
        return it == gamma_ov.end() ? gamma0 : it->second;
    }
};

// Scalar term value with a chosen subgradient over the movable coordinates.
struct TermValueGrad {
    double value = 0.0;
    std::vector<double> grad_x;
    std::vector<double> grad_y;

    explicit TermValueGrad(int n_movable = 0)
        : grad_x(n_movable, 0.0), grad_y(n_movable, 0.0) {}

    void add(const TermValueGrad& other);
};

// Half-perimeter wirelength of the given nets: per net and axis,
// max - min of member coordinates. The subgradient puts +1 on the max
// cell and -1 on the min cell (lowest cell id on ties); shares landing
// on terminals are dropped since terminals are fixed.
TermValueGrad hpwl(const Netlist& netlist, const Placement& placement,
                   std::span<const int> net_subset);

// Out-of-bounds penalty: sum over movable cells of
// gamma_i * [ReLU(w/2 - x) + ReLU(x - (W - w/2)) + (same in y)].
// The subgradient at a kink is taken as 0.
TermValueGrad boundary_penalty(const Netlist& netlist, const Region& region,
                               const Placement& placement,
                               const PenaltyWeights& weights);

struct HatValue {
    double value = 0.0;
    double dx = 0.0;
    double dy = 0.0;
};

// Piecewise-linear 2-D hat: 1 at the origin, 0 outside |x| >= r or
// |y| >= t, sloping 1/r along x when |y|/t <= |x|/r and 1/t along y
// otherwise. Partials at branch kinks follow the same "<=" tie rule;
// the origin gets a zero subgradient.
HatValue hat(double x, double y, double r, double t);

// Sum over pairs of gamma_ij * hat(x_i - x_j, y_i - y_j, w_ij, h_ij)
// with w_ij, h_ij the half-sums of the pair's sizes.
TermValueGrad overlap_penalty_hat(const Netlist& netlist, const Placement& placement,
                                  const PenaltyWeights& weights,
                                  std::span<const CellPair> pairs);

// Ablation-only quadratic penalty: gamma_ij * overlap extent in x times
// overlap extent in y (the exact overlap area when gamma = 1). Its
// partials vanish near corner tangency, which is the failure mode the
// hat penalty avoids.
TermValueGrad overlap_penalty_quadratic(const Netlist& netlist,
                                        const Placement& placement,
                                        const PenaltyWeights& weights,
                                        std::span<const CellPair> pairs);

// alpha * sum_i ||(x_i, y_i) - mean||^2 with the mean frozen for the
// evaluation, so grad_i = 2 alpha ((x_i, y_i) - mean).
TermValueGrad mean_field(const Placement& placement, double alpha);

// Monitoring objective: HPWL over all nets + boundary + hat overlap +
// mean field. Never subsampled.
double total_objective(const Netlist& netlist, const Region& region,
                       const Placement& placement, const PenaltyWeights& weights,
                       double alpha, std::span<const CellPair> pairs);

}  // namespace rlplace
