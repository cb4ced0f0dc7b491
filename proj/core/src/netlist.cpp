#include "rlplace/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace rlplace {

Netlist::Netlist(std::vector<Cell> cells, std::vector<Net> nets)
    : cells_(std::move(cells)), nets_(std::move(nets)) {
    const int n = num_cells();
    movable_index_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (cells_[i].id != i)
            throw std::invalid_argument("cell ids must be dense 0..n-1");
        if (cells_[i].movable()) {
            if (cells_[i].width <= 0.0 || cells_[i].height <= 0.0)
                throw std::invalid_argument("movable cell " + std::to_string(i) +
                                            " must have positive size");
            movable_index_[i] = num_movable_++;
            movable_ids_.push_back(i);
        } else if (!cells_[i].fixed_pos) {
            throw std::invalid_argument("terminal " + std::to_string(i) +
                                        " has no fixed position");
        }
    }

    incidence_.assign(n, {});
    for (auto& net : nets_) {
        std::unordered_set<int> seen;
        std::vector<int> dedup;
        dedup.reserve(net.members.size());
        for (int cid : net.members) {
            if (cid < 0 || cid >= n)
                throw std::invalid_argument("net " + std::to_string(net.id) +
                                            " references unknown cell id " +
                                            std::to_string(cid));
            if (seen.insert(cid).second) dedup.push_back(cid);
        }
        net.members = std::move(dedup);
        if (net.members.empty())
            throw std::invalid_argument("net " + std::to_string(net.id) + " is empty");
        for (int cid : net.members) incidence_[cid].push_back(net.id);
        num_pins_ += static_cast<int>(net.members.size());
    }
}

double Netlist::total_movable_area() const {
    double a = 0.0;
    for (int cid : movable_ids_) a += cells_[cid].width * cells_[cid].height;
    return a;
}

std::pair<double, double> Netlist::position(int cell_id, const Placement& p) const {
    const Cell& c = cells_[cell_id];
    if (!c.movable()) return *c.fixed_pos;
    const int mi = movable_index_[cell_id];
    return {p.x[mi], p.y[mi]};
}

Netlist build_netlist(std::vector<Cell> cells, std::vector<Net> nets) {
    return Netlist(std::move(cells), std::move(nets));
}

std::vector<int> net_degrees(const Netlist& netlist) {
    const int m = netlist.num_nets();
    std::vector<int> degrees(m, 0);
    std::vector<int> mark(m, -1);
    for (int k = 0; k < m; ++k) {
        int deg = 0;
        for (int cid : netlist.nets()[k].members) {
            for (int other : netlist.incidence()[cid]) {
                if (other == k || mark[other] == k) continue;
                mark[other] = k;
                ++deg;
            }
        }
        degrees[k] = deg;
    }
    return degrees;
}

void check_finite(const Placement& p) {
    for (double v : p.x)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite x coordinate");
    for (double v : p.y)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite y coordinate");
}

std::pair<Netlist, Region> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_cells < 2) throw std::invalid_argument("need at least 2 cells");
    if (spec.n_nets < 1) throw std::invalid_argument("need at least 1 net");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> size_dist(spec.size_range.first,
                                                     spec.size_range.second);

    std::vector<Cell> cells(spec.n_cells);
    double area = 0.0;
    for (int i = 0; i < spec.n_cells; ++i) {
        cells[i].id = i;
        cells[i].width = size_dist(rng);
        cells[i].height = size_dist(rng);
        cells[i].name = "c" + std::to_string(i);
        area += cells[i].width * cells[i].height;
    }
    if (area > 0.6 * spec.region.width * spec.region.height)
        throw std::runtime_error("synthetic instance too dense: cell area " +
                                 std::to_string(area) + " exceeds 60% of region");

    std::uniform_int_distribution<int> deg_dist(2, 6);
    std::uniform_int_distribution<int> cell_dist(0, spec.n_cells - 1);
    std::vector<Net> nets(spec.n_nets);
    for (int k = 0; k < spec.n_nets; ++k) {
        nets[k].id = k;
        const int deg = std::min(deg_dist(rng), spec.n_cells);
        std::unordered_set<int> picked;
        while (static_cast<int>(picked.size()) < deg) {
            int cid = cell_dist(rng);
            if (picked.insert(cid).second) nets[k].members.push_back(cid);
        }
    }
    return {build_netlist(std::move(cells), std::move(nets)), spec.region};
}

}  // namespace rlplace
