#include "rlplace/legalizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rlplace/objective.hpp"
#include "rlplace/spatial_grid.hpp"

namespace rlplace {
namespace {

struct Extents {
    double ex;  // overlap extent in x, positive when overlapping
    double ey;
    double dx;
    double dy;
    double wij;
    double hij;
};

Extents pair_extents(const Netlist& nl, int i, int j, const Placement& p) {
    const Cell& ci = nl.cells()[i];
    const Cell& cj = nl.cells()[j];
    const int mi = nl.movable_index(i);
    const int mj = nl.movable_index(j);
    Extents e;
    e.dx = p.x[mi] - p.x[mj];
    e.dy = p.y[mi] - p.y[mj];
    e.wij = (ci.width + cj.width) / 2.0;
    e.hij = (ci.height + cj.height) / 2.0;
    e.ex = e.wij - std::abs(e.dx);
    e.ey = e.hij - std::abs(e.dy);
    return e;
}

double exact_overlap_area(const Netlist& nl, const Placement& p) {
    double area = 0.0;
    const auto& ids = nl.movable_ids();
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            Extents e = pair_extents(nl, ids[a], ids[b], p);
            if (e.ex > 0.0 && e.ey > 0.0) area += e.ex * e.ey;
        }
    return area;
}

}  // namespace

std::pair<double, double> deoverlap_step(const Netlist& netlist, int cell_i,
                                         int cell_j, const Placement& placement) {
    Extents e = pair_extents(netlist, cell_i, cell_j, placement);
    if (e.ex <= 0.0 || e.ey <= 0.0)
        throw std::invalid_argument("deoverlap_step: cells do not overlap");
    const int mi = netlist.movable_index(cell_i);
    const int mj = netlist.movable_index(cell_j);
    // x-branch when |dy|/h <= |dx|/w, matching the hat's tie rule;
    // sign(0) = +1 so coincident centers resolve along +x.
    if (std::abs(e.dy) / e.hij <= std::abs(e.dx) / e.wij) {
        const double s = e.dx >= 0.0 ? 1.0 : -1.0;
        const double target = placement.x[mj] + s * e.wij;
        return {target - placement.x[mi], 0.0};
    }
    const double s = e.dy >= 0.0 ? 1.0 : -1.0;
    const double target = placement.y[mj] + s * e.hij;
    return {0.0, target - placement.y[mi]};
}

std::pair<double, double> boundary_snap(const Netlist& netlist, int cell_i,
                                        const Region& region,
                                        const Placement& placement) {
    const Cell& c = netlist.cells()[cell_i];
    if (c.width > region.width || c.height > region.height)
        throw std::invalid_argument("cell " + std::to_string(cell_i) +
                                    " is larger than the die");
    const int mi = netlist.movable_index(cell_i);
    const double tx =
        std::clamp(placement.x[mi], c.width / 2.0, region.width - c.width / 2.0);
    const double ty =
        std::clamp(placement.y[mi], c.height / 2.0, region.height - c.height / 2.0);
    return {tx - placement.x[mi], ty - placement.y[mi]};
}

std::pair<Placement, LegalizeReport> legalize(const Netlist& netlist,
                                              const Region& region,
                                              Placement placement,
                                              const LegalizeConfig& config) {
    if (config.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    check_finite(placement);
    const auto& ids = netlist.movable_ids();
    const double eps_len = 1e-9 * (region.width + region.height);

    double wl_lr = config.wl_lr;
    if (wl_lr < 0.0) {
        double mean_size = 0.0;
        for (int cid : ids)
            mean_size += (netlist.cells()[cid].width + netlist.cells()[cid].height) / 2.0;
        if (!ids.empty()) mean_size /= static_cast<double>(ids.size());
        wl_lr = 0.01 * mean_size;
    }

    std::vector<int> all_nets(netlist.num_nets());
    std::iota(all_nets.begin(), all_nets.end(), 0);

    auto overlapping = [&](int i, int j) {
        Extents e = pair_extents(netlist, i, j, placement);
        return e.ex > eps_len && e.ey > eps_len;
    };

    // Hat-axis de-overlap, but when the tangency target leaves the die
    // the opposite side is tried, then the other axis; otherwise the
    // boundary snap would undo the move and the sweep could cycle.
    auto bounded_deoverlap = [&](int i, int j) -> std::pair<double, double> {
        Extents e = pair_extents(netlist, i, j, placement);
        const Cell& ci = netlist.cells()[i];
        const int mi = netlist.movable_index(i);
        const int mj = netlist.movable_index(j);
        const double sx = e.dx >= 0.0 ? 1.0 : -1.0;
        const double sy = e.dy >= 0.0 ? 1.0 : -1.0;
        struct Move {
            double dx, dy;
            bool in_bounds;
        };
        auto move_x = [&](double s) {
            const double target = placement.x[mj] + s * e.wij;
            return Move{target - placement.x[mi], 0.0,
                        target >= ci.width / 2.0 &&
                            target <= region.width - ci.width / 2.0};
        };
        auto move_y = [&](double s) {
            const double target = placement.y[mj] + s * e.hij;
            return Move{0.0, target - placement.y[mi],
                        target >= ci.height / 2.0 &&
                            target <= region.height - ci.height / 2.0};
        };
        const bool x_first = std::abs(e.dy) / e.hij <= std::abs(e.dx) / e.wij;
        const Move order[4] = {x_first ? move_x(sx) : move_y(sy),
                               x_first ? move_x(-sx) : move_y(-sy),
                               x_first ? move_y(sy) : move_x(sx),
                               x_first ? move_y(-sy) : move_x(-sx)};
        for (const Move& m : order)
            if (m.in_bounds) return {m.dx, m.dy};
        return {order[0].dx, order[0].dy};
    };

    // One pass: each cell resolves against its lowest-id overlapping
    // partner (then moves on), followed by boundary snapping.
    auto sweep = [&](bool with_wirelength) {
        if (with_wirelength && wl_lr > 0.0 && !all_nets.empty()) {
            TermValueGrad g = hpwl(netlist, placement, all_nets);
            for (std::size_t i = 0; i < placement.size(); ++i) {
                placement.x[i] -= wl_lr * g.grad_x[i];
                placement.y[i] -= wl_lr * g.grad_y[i];
            }
        }
        for (int i : ids) {
            for (int j : ids) {
                if (j == i || !overlapping(i, j)) continue;
                auto [dx, dy] = bounded_deoverlap(i, j);
                const int mi = netlist.movable_index(i);
                placement.x[mi] += dx;
                placement.y[mi] += dy;
                break;
            }
        }
        for (int i : ids) {
            auto [dx, dy] = boundary_snap(netlist, i, region, placement);
            const int mi = netlist.movable_index(i);
            placement.x[mi] += dx;
            placement.y[mi] += dy;
        }
    };

    auto any_overlap = [&]() {
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b)
                if (overlapping(ids[a], ids[b])) return true;
        return false;
    };

    int sweeps = 0;
    for (int r = 0; r < config.rounds; ++r, ++sweeps) sweep(true);
    while (sweeps < config.sweep_cap && any_overlap()) {
        sweep(false);
        ++sweeps;
    }

    LegalizeReport report;
    report.sweeps = sweeps;
    report.hpwl = all_nets.empty() ? 0.0 : hpwl(netlist, placement, all_nets).value;
    report.overlap_area = exact_overlap_area(netlist, placement);

    bool in_bounds = true;
    for (int cid : ids) {
        const Cell& c = netlist.cells()[cid];
        const int mi = netlist.movable_index(cid);
        if (placement.x[mi] < c.width / 2.0 - eps_len ||
            placement.x[mi] > region.width - c.width / 2.0 + eps_len ||
            placement.y[mi] < c.height / 2.0 - eps_len ||
            placement.y[mi] > region.height - c.height / 2.0 + eps_len)
            in_bounds = false;
    }
    report.success = in_bounds && !any_overlap();
    return {std::move(placement), report};
}

}  // namespace rlplace
