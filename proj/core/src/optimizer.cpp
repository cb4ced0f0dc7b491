#include "rlplace/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rlplace/sampler.hpp"
#include "rlplace/spatial_grid.hpp"

namespace rlplace {
namespace {

enum class Method { Rbsm, Gd, Adam };

double exact_overlap_area(const Netlist& netlist, const Placement& placement,
                          std::span<const CellPair> pairs) {
    double area = 0.0;
    for (const CellPair& p : pairs) {
        const Cell& ci = netlist.cells()[p.a];
        const Cell& cj = netlist.cells()[p.b];
        const int mi = netlist.movable_index(p.a);
        const int mj = netlist.movable_index(p.b);
        const double ex = (ci.width + cj.width) / 2.0 -
                          std::abs(placement.x[mi] - placement.x[mj]);
        const double ey = (ci.height + cj.height) / 2.0 -
                          std::abs(placement.y[mi] - placement.y[mj]);
        if (ex > 0.0 && ey > 0.0) area += ex * ey;
    }
    return area;
}

struct AdamState {
    std::vector<double> mx, my, vx, vy;
    long t = 0;
    static constexpr double beta1 = 0.9;
    static constexpr double beta2 = 0.999;
    static constexpr double eps = 1e-8;

    explicit AdamState(int n) : mx(n, 0.0), my(n, 0.0), vx(n, 0.0), vy(n, 0.0) {}
};

struct Updater {
    Method method;
    AdamState adam;

    Updater(Method m, int n) : method(m), adam(n) {}

    void apply(Placement& p, const std::vector<double>& gx,
               const std::vector<double>& gy, double lr) {
        const int n = static_cast<int>(p.size());
        if (method == Method::Adam) {
            ++adam.t;
            const double bc1 = 1.0 - std::pow(AdamState::beta1, adam.t);
            const double bc2 = 1.0 - std::pow(AdamState::beta2, adam.t);
            for (int i = 0; i < n; ++i) {
                adam.mx[i] = AdamState::beta1 * adam.mx[i] + (1 - AdamState::beta1) * gx[i];
                adam.my[i] = AdamState::beta1 * adam.my[i] + (1 - AdamState::beta1) * gy[i];
                adam.vx[i] = AdamState::beta2 * adam.vx[i] + (1 - AdamState::beta2) * gx[i] * gx[i];
                adam.vy[i] = AdamState::beta2 * adam.vy[i] + (1 - AdamState::beta2) * gy[i] * gy[i];
                p.x[i] -= lr * (adam.mx[i] / bc1) / (std::sqrt(adam.vx[i] / bc2) + AdamState::eps);
                p.y[i] -= lr * (adam.my[i] / bc1) / (std::sqrt(adam.vy[i] / bc2) + AdamState::eps);
            }
        } else {
            for (int i = 0; i < n; ++i) {
                p.x[i] -= lr * gx[i];
                p.y[i] -= lr * gy[i];
            }
        }
    }
};

RunResult run_impl(const Netlist& netlist, const Region& region,
                   const RbsmConfig& config, Method method) {
    using clock = std::chrono::steady_clock;
    config.validate();
    const int n = netlist.num_movable();
    const int m = netlist.num_nets();
    if (n < 1) throw std::invalid_argument("no movable cells");

    std::mt19937_64 rng(config.seed);

    // random start inside each cell's feasible box
    Placement p;
    p.x.resize(n);
    p.y.resize(n);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int cid : netlist.movable_ids()) {
        const Cell& c = netlist.cells()[cid];
        const int mi = netlist.movable_index(cid);
        p.x[mi] = c.width / 2.0 + unif(rng) * (region.width - c.width);
        p.y[mi] = c.height / 2.0 + unif(rng) * (region.height - c.height);
    }

    std::vector<int> all_nets(m);
    std::iota(all_nets.begin(), all_nets.end(), 0);

    SamplingPlan plan;
    if (method != Method::Gd && m > 0) {
        const int batch =
            std::clamp(static_cast<int>(std::ceil(m * config.batch_fraction)), 1, m);
        if (config.uniform_batch) {
            plan = build_uniform_plan(m, batch);
        } else {
            auto degrees = net_degrees(netlist);
            const double T = config.temperature > 0.0 ? config.temperature
                                                      : default_temperature(degrees);
            plan = build_plan(degrees, T, batch);
        }
    }

    const double total_area = netlist.total_movable_area();
    const double bin_w = default_bin_w(netlist);
    const double bin_h = default_bin_h(netlist);
    auto grid_pairs = [&](const Placement& pl) {
        return UniformGrid(netlist, region, pl, bin_w, bin_h).candidate_pairs();
    };

    // Each split owns its optimizer state: the splitting treats wirelength
    // and penalty as separate training objectives, so ADAM moments track
    // the gradients of their own split only.
    Updater wl_updater(method, n);
    Updater pen_updater(method, n);
    const bool use_mean_field = method != Method::Gd && config.alpha != 0.0;
    // The mean-field coefficient acts per unit of die perimeter, so the
    // applied force 2*alpha*dev/perimeter stays a gentle drift relative to
    // the unit-magnitude wirelength subgradients on any die size.
    const double alpha_eff = config.alpha / (8.0 * (region.width + region.height));
    const bool use_perturb = method != Method::Gd && config.perturb;

    PenaltyWeights weights = PenaltyWeights::uniform(n, config.gamma0);
    IterationTrace trace;
    Placement best = p;
    double best_hpwl = std::numeric_limits<double>::infinity();
    double best_overlap = std::numeric_limits<double>::infinity();
    bool best_feasible = false;
    double prev_hpwl = -1.0;
    std::vector<char> in_batch(n, 0);

    for (int k = 0; k < config.iter_max; ++k) {
        const auto t0 = clock::now();
        const double lr = lr_schedule(config.lr0, k, config.iter_max);

        if (method != Method::Gd) {
            if (config.adaptive_gamma_on) {
                weights = adaptive_gamma(netlist, region, p, grid_pairs(p), config.gamma0);
            } else {
                weights = PenaltyWeights::uniform(n, config.gamma_fixed);
            }
        }

        for (int step = 0; step < config.inner_steps; ++step) {
            if (method == Method::Gd) {
                TermValueGrad g(n);
                if (m > 0) g.add(hpwl(netlist, p, all_nets));
                g.add(boundary_penalty(netlist, region, p, weights));
                auto pairs = grid_pairs(p);
                g.add(overlap_penalty_hat(netlist, p, weights, pairs));
                wl_updater.apply(p, g.grad_x, g.grad_y, lr);
                continue;
            }

            std::vector<int> batch;
            if (m > 0) batch = sample_batch(plan, rng);

            // wirelength split
            {
                TermValueGrad g(n);
                if (!batch.empty()) g.add(hpwl(netlist, p, batch));
                if (use_mean_field) g.add(mean_field(p, alpha_eff));
                if (use_perturb) perturb_gradient(g.grad_x, g.grad_y, k + 1, rng);
                wl_updater.apply(p, g.grad_x, g.grad_y, lr);
            }

            // penalty split over pairs touching the batch
            {
                auto pairs = grid_pairs(p);
                if (!config.penalty_full_pairs && m > 0) {
                    std::fill(in_batch.begin(), in_batch.end(), 0);
                    for (int net_id : batch)
                        for (int cid : netlist.nets()[net_id].members)
                            if (int mi = netlist.movable_index(cid); mi >= 0)
                                in_batch[mi] = 1;
                    std::erase_if(pairs, [&](const CellPair& q) {
                        return !in_batch[netlist.movable_index(q.a)] &&
                               !in_batch[netlist.movable_index(q.b)];
                    });
                }
                TermValueGrad g = boundary_penalty(netlist, region, p, weights);
                g.add(overlap_penalty_hat(netlist, p, weights, pairs));
                if (use_perturb) perturb_gradient(g.grad_x, g.grad_y, k + 1, rng);
                pen_updater.apply(p, g.grad_x, g.grad_y, lr);
            }
        }

        for (double v : p.x)
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite placement at iteration " +
                                         std::to_string(k));
        for (double v : p.y)
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite placement at iteration " +
                                         std::to_string(k));

        auto pairs = grid_pairs(p);
        IterationRecord rec;
        rec.hpwl = m > 0 ? hpwl(netlist, p, all_nets).value : 0.0;
        rec.overlap_area = exact_overlap_area(netlist, p, pairs);
        rec.overlap_ratio = total_area > 0.0 ? rec.overlap_area / total_area : 0.0;
        rec.objective = total_objective(netlist, region, p, weights,
                                        use_mean_field ? alpha_eff : 0.0, pairs);
        rec.lr = lr;
        rec.wall_time_s = std::chrono::duration<double>(clock::now() - t0).count();
        trace.push_back(rec);

        // Best-trace selection honors the model's own feasibility bar: the
        // lowest-wirelength iterate with overlap under eps_overlap, falling
        // back to the least-overlapped iterate when none qualifies.
        const bool feasible = rec.overlap_ratio < config.eps_overlap;
        const bool better = feasible
                                ? (!best_feasible || rec.hpwl < best_hpwl)
                                : (!best_feasible && rec.overlap_area < best_overlap);
        if (better) {
            best = p;
            best_hpwl = rec.hpwl;
            best_overlap = rec.overlap_area;
            best_feasible = best_feasible || feasible;
        }

        if (prev_hpwl > 0.0 && rec.hpwl > 0.0 &&
            std::abs(prev_hpwl / rec.hpwl - 1.0) < config.eps_hpwl && feasible)
            break;
        prev_hpwl = rec.hpwl;
    }

    return {std::move(best), std::move(trace)};
}

}  // namespace

void RbsmConfig::validate() const {
    if (iter_max < 1 || inner_steps < 1)
        throw std::invalid_argument("iteration counts must be >= 1");
    if (lr0 <= 0.0) throw std::invalid_argument("lr0 must be > 0");
    if (eps_hpwl <= 0.0 || eps_overlap <= 0.0)
        throw std::invalid_argument("tolerances must be > 0");
    if (batch_fraction <= 0.0 || batch_fraction > 1.0)
        throw std::invalid_argument("batch_fraction must be in (0, 1]");
}

PenaltyWeights adaptive_gamma(const Netlist& netlist, const Region& region,
                              const Placement& placement,
                              std::span<const CellPair> pairs, double gamma0) {
    const int n = netlist.num_movable();
    PenaltyWeights out;
    out.gamma0 = gamma0;
    out.gamma_b.assign(n, gamma0);

    std::vector<int> all_nets(netlist.num_nets());
    std::iota(all_nets.begin(), all_nets.end(), 0);
    TermValueGrad ge(n);
    if (!all_nets.empty()) ge = hpwl(netlist, placement, all_nets);

    PenaltyWeights unit = PenaltyWeights::uniform(n, 1.0);
    TermValueGrad bp = boundary_penalty(netlist, region, placement, unit);

    auto ratio = [](double num, double den) {
        return den != 0.0 ? std::abs(num) / std::abs(den) : 0.0;
    };

    for (int i = 0; i < n; ++i) {
        if (bp.grad_x[i] == 0.0 && bp.grad_y[i] == 0.0) continue;  // keep gamma0
        const double r = std::max(ratio(ge.grad_x[i], bp.grad_x[i]),
                                  ratio(ge.grad_y[i], bp.grad_y[i]));
        out.gamma_b[i] = std::max(1.0, std::ceil(r));
    }

    for (const CellPair& q : pairs) {
        const Cell& ci = netlist.cells()[q.a];
        const Cell& cj = netlist.cells()[q.b];
        const int mi = netlist.movable_index(q.a);
        const int mj = netlist.movable_index(q.b);
        HatValue h = hat(placement.x[mi] - placement.x[mj],
                         placement.y[mi] - placement.y[mj],
                         (ci.width + cj.width) / 2.0, (ci.height + cj.height) / 2.0);
        if (h.dx == 0.0 && h.dy == 0.0) continue;  // absent -> gamma0 default
        const double r = std::max(std::max(ratio(ge.grad_x[mi], h.dx),
                                           ratio(ge.grad_x[mj], h.dx)),
                                  std::max(ratio(ge.grad_y[mi], h.dy),
                                           ratio(ge.grad_y[mj], h.dy)));
        out.gamma_ov[pair_key(q)] = std::max(1.0, std::ceil(r));
    }
    return out;
}

void perturb_gradient(std::vector<double>& grad_x, std::vector<double>& grad_y,
                      int k, std::mt19937_64& rng) {
    if (k < 1) throw std::invalid_argument("perturbation index must be >= 1");
    double norm2 = 0.0;
    for (double v : grad_x) norm2 += v * v;
    for (double v : grad_y) norm2 += v * v;
    if (norm2 == 0.0) return;
    const double scale = (0.2 / (static_cast<double>(k) * k * k)) * std::sqrt(norm2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : grad_x) v += scale * gauss(rng);
    for (double& v : grad_y) v += scale * gauss(rng);
}

double lr_schedule(double lr0, int k, int iter_max) {
    return lr0 * (1.0 + std::cos(M_PI * k / iter_max)) / 2.0;
}

RunResult rbsm_run(const Netlist& netlist, const Region& region,
                   const RbsmConfig& config) {
    return run_impl(netlist, region, config, Method::Rbsm);
}

RunResult gd_run(const Netlist& netlist, const Region& region,
                 const RbsmConfig& config) {
    return run_impl(netlist, region, config, Method::Gd);
}

RunResult adam_run(const Netlist& netlist, const Region& region,
                   const RbsmConfig& config) {
    return run_impl(netlist, region, config, Method::Adam);
}

}  // namespace rlplace
