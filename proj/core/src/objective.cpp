#include "rlplace/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace rlplace {
namespace {

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

void TermValueGrad::add(const TermValueGrad& other) {
    value += other.value;
    for (std::size_t i = 0; i < grad_x.size(); ++i) {
        grad_x[i] += other.grad_x[i];
        grad_y[i] += other.grad_y[i];
    }
}

TermValueGrad hpwl(const Netlist& netlist, const Placement& placement,
                   std::span<const int> net_subset) {
    if (net_subset.empty()) throw std::invalid_argument("hpwl: empty net subset");
    TermValueGrad out(netlist.num_movable());

    for (int net_id : net_subset) {
        if (net_id < 0 || net_id >= netlist.num_nets())
            throw std::out_of_range("hpwl: net id out of range");
        const Net& net = netlist.nets()[net_id];
        if (net.members.size() < 2) continue;

        int max_x = -1, min_x = -1, max_y = -1, min_y = -1;
        double vmax_x = 0, vmin_x = 0, vmax_y = 0, vmin_y = 0;
        for (int cid : net.members) {
            auto [px, py] = netlist.position(cid, placement);
            if (max_x < 0 || px > vmax_x || (px == vmax_x && cid < max_x)) {
                vmax_x = px; max_x = cid;
            }
            if (min_x < 0 || px < vmin_x || (px == vmin_x && cid < min_x)) {
                vmin_x = px; min_x = cid;
            }
            if (max_y < 0 || py > vmax_y || (py == vmax_y && cid < max_y)) {
                vmax_y = py; max_y = cid;
            }
            if (min_y < 0 || py < vmin_y || (py == vmin_y && cid < min_y)) {
                vmin_y = py; min_y = cid;
            }
        }
        out.value += (vmax_x - vmin_x) + (vmax_y - vmin_y);
        if (int mi = netlist.movable_index(max_x); mi >= 0) out.grad_x[mi] += 1.0;
        if (int mi = netlist.movable_index(min_x); mi >= 0) out.grad_x[mi] -= 1.0;
        if (int mi = netlist.movable_index(max_y); mi >= 0) out.grad_y[mi] += 1.0;
        if (int mi = netlist.movable_index(min_y); mi >= 0) out.grad_y[mi] -= 1.0;
    }
    return out;
}

TermValueGrad boundary_penalty(const Netlist& netlist, const Region& region,
                               const Placement& placement,
                               const PenaltyWeights& weights) {
    TermValueGrad out(netlist.num_movable());
    for (int cid : netlist.movable_ids()) {
        const Cell& c = netlist.cells()[cid];
        const int mi = netlist.movable_index(cid);
        const double g =
            weights.gamma_b.empty() ? weights.gamma0 : weights.gamma_b[mi];
        const double x = placement.x[mi], y = placement.y[mi];
        const double xlo = c.width / 2.0, xhi = region.width - c.width / 2.0;
        const double ylo = c.height / 2.0, yhi = region.height - c.height / 2.0;

        if (x < xlo) { out.value += g * (xlo - x); out.grad_x[mi] -= g; }
        if (x > xhi) { out.value += g * (x - xhi); out.grad_x[mi] += g; }
        if (y < ylo) { out.value += g * (ylo - y); out.grad_y[mi] -= g; }
        if (y > yhi) { out.value += g * (y - yhi); out.grad_y[mi] += g; }
    }
    return out;
}

HatValue hat(double x, double y, double r, double t) {
    if (r <= 0.0 || t <= 0.0) throw std::invalid_argument("hat: r and t must be > 0");
    HatValue h;
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax >= r || ay >= t) return h;
    if (ay / t <= ax / r) {
        h.value = 1.0 - ax / r;
        h.dx = -sign(x) / r;
    } else {
        h.value = 1.0 - ay / t;
        h.dy = -sign(y) / t;
    }
    return h;
}

TermValueGrad overlap_penalty_hat(const Netlist& netlist, const Placement& placement,
                                  const PenaltyWeights& weights,
                                  std::span<const CellPair> pairs) {
    TermValueGrad out(netlist.num_movable());
    for (const CellPair& p : pairs) {
        const Cell& ci = netlist.cells()[p.a];
        const Cell& cj = netlist.cells()[p.b];
        if (!ci.movable() || !cj.movable())
            throw std::invalid_argument("overlap penalty over a terminal pair");
        const int mi = netlist.movable_index(p.a);
        const int mj = netlist.movable_index(p.b);
        const double wij = (ci.width + cj.width) / 2.0;
        const double hij = (ci.height + cj.height) / 2.0;
        const double g = weights.pair_weight(p);
        HatValue h = hat(placement.x[mi] - placement.x[mj],
                         placement.y[mi] - placement.y[mj], wij, hij);
        out.value += g * h.value;
        out.grad_x[mi] += g * h.dx;
        out.grad_x[mj] -= g * h.dx;
        out.grad_y[mi] += g * h.dy;
        out.grad_y[mj] -= g * h.dy;
    }
    return out;
}

TermValueGrad overlap_penalty_quadratic(const Netlist& netlist,
                                        const Placement& placement,
                                        const PenaltyWeights& weights,
                                        std::span<const CellPair> pairs) {
    TermValueGrad out(netlist.num_movable());
    for (const CellPair& p : pairs) {
        const Cell& ci = netlist.cells()[p.a];
        const Cell& cj = netlist.cells()[p.b];
        if (!ci.movable() || !cj.movable())
            throw std::invalid_argument("overlap penalty over a terminal pair");
        const int mi = netlist.movable_index(p.a);
        const int mj = netlist.movable_index(p.b);
        const double wij = (ci.width + cj.width) / 2.0;
        const double hij = (ci.height + cj.height) / 2.0;
        const double dx = placement.x[mi] - placement.x[mj];
        const double dy = placement.y[mi] - placement.y[mj];
        const double ex = wij - std::abs(dx);
        const double ey = hij - std::abs(dy);
        if (ex <= 0.0 || ey <= 0.0) continue;
        const double g = weights.pair_weight(p);
        out.value += g * ex * ey;
        const double gx = g * (-sign(dx)) * ey;
        const double gy = g * (-sign(dy)) * ex;
        out.grad_x[mi] += gx;
        out.grad_x[mj] -= gx;
        out.grad_y[mi] += gy;
        out.grad_y[mj] -= gy;
    }
    return out;
}

TermValueGrad mean_field(const Placement& placement, double alpha) {
    const int n = static_cast<int>(placement.size());
    TermValueGrad out(n);
    if (n == 0 || alpha == 0.0) return out;
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) { mx += placement.x[i]; my += placement.y[i]; }
    mx /= n;
    my /= n;
    for (int i = 0; i < n; ++i) {
        const double dx = placement.x[i] - mx, dy = placement.y[i] - my;
        out.value += alpha * (dx * dx + dy * dy);
        out.grad_x[i] = 2.0 * alpha * dx;
        out.grad_y[i] = 2.0 * alpha * dy;
    }
    return out;
}

double total_objective(const Netlist& netlist, const Region& region,
                       const Placement& placement, const PenaltyWeights& weights,
                       double alpha, std::span<const CellPair> pairs) {
    std::vector<int> all_nets(netlist.num_nets());
    for (int k = 0; k < netlist.num_nets(); ++k) all_nets[k] = k;
    double v = 0.0;
    if (!all_nets.empty()) v += hpwl(netlist, placement, all_nets).value;
    v += boundary_penalty(netlist, region, placement, weights).value;
    v += overlap_penalty_hat(netlist, placement, weights, pairs).value;
    v += mean_field(placement, alpha).value;
    return v;
}

}  // namespace rlplace
