#include "rlplace/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rlplace {

UniformGrid::UniformGrid(const Netlist& netlist, const Region& region,
                         const Placement& placement, double bin_w, double bin_h) {
    if (bin_w <= 0.0 || bin_h <= 0.0)
        throw std::invalid_argument("grid bin sizes must be > 0");
    nx_ = std::max(1, static_cast<int>(std::ceil(region.width / bin_w)));
    ny_ = std::max(1, static_cast<int>(std::ceil(region.height / bin_h)));
    bins_.assign(static_cast<std::size_t>(nx_) * ny_, {});

    auto clamp_bin = [](int b, int n) { return std::clamp(b, 0, n - 1); };
    for (int cid : netlist.movable_ids()) {
        const Cell& c = netlist.cells()[cid];
        const int mi = netlist.movable_index(cid);
        const double x0 = placement.x[mi] - c.width / 2.0;
        const double x1 = placement.x[mi] + c.width / 2.0;
        const double y0 = placement.y[mi] - c.height / 2.0;
        const double y1 = placement.y[mi] + c.height / 2.0;
        const int bx0 = clamp_bin(static_cast<int>(std::floor(x0 / bin_w)), nx_);
        const int bx1 = clamp_bin(static_cast<int>(std::floor(x1 / bin_w)), nx_);
        const int by0 = clamp_bin(static_cast<int>(std::floor(y0 / bin_h)), ny_);
        const int by1 = clamp_bin(static_cast<int>(std::floor(y1 / bin_h)), ny_);
        for (int by = by0; by <= by1; ++by)
            for (int bx = bx0; bx <= bx1; ++bx)
                bins_[static_cast<std::size_t>(by) * nx_ + bx].push_back(cid);
    }
}

std::vector<CellPair> UniformGrid::candidate_pairs() const {
    std::vector<std::uint64_t> keys;
    for (const auto& bin : bins_) {
        for (std::size_t i = 0; i < bin.size(); ++i)
            for (std::size_t j = i + 1; j < bin.size(); ++j)
                keys.push_back(pair_key(CellPair(bin[i], bin[j])));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<CellPair> pairs;
    pairs.reserve(keys.size());
    for (std::uint64_t k : keys)
        pairs.emplace_back(static_cast<int>(k >> 32),
                           static_cast<int>(k & 0xffffffffu));
    return pairs;
}

double default_bin_w(const Netlist& netlist) {
    double m = 1.0;
    for (int cid : netlist.movable_ids())
        m = std::max(m, netlist.cells()[cid].width);
    return m;
}

double default_bin_h(const Netlist& netlist) {
    double m = 1.0;
    for (int cid : netlist.movable_ids())
        m = std::max(m, netlist.cells()[cid].height);
    return m;
}

std::vector<CellPair> broad_phase_pairs(const Netlist& netlist, const Region& region,
                                        const Placement& placement) {
    UniformGrid grid(netlist, region, placement, default_bin_w(netlist),
                     default_bin_h(netlist));
    return grid.candidate_pairs();
}

std::vector<CellPair> all_movable_pairs(const Netlist& netlist) {
    std::vector<CellPair> pairs;
    const auto& ids = netlist.movable_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            pairs.emplace_back(ids[i], ids[j]);
    return pairs;
}

}  // namespace rlplace
