#include "rlplace/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rlplace {

double oracle_hpwl(const Netlist& netlist, const Placement& placement) {
    double total = 0.0;
    std::vector<double> xs, ys;
    for (const Net& net : netlist.nets()) {
        if (net.members.size() < 2) continue;
        xs.clear();
        ys.clear();
        for (int cid : net.members) {
            auto [px, py] = netlist.position(cid, placement);
            xs.push_back(px);
            ys.push_back(py);
        }
        auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
        auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
        total += (*xmax - *xmin) + (*ymax - *ymin);
    }
    return total;
}

double oracle_overlap(const Netlist& netlist, const Placement& placement) {
    double area = 0.0;
    const auto& ids = netlist.movable_ids();
    for (std::size_t a = 0; a < ids.size(); ++a) {
        const Cell& ci = netlist.cells()[ids[a]];
        const int mi = netlist.movable_index(ids[a]);
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            const Cell& cj = netlist.cells()[ids[b]];
            const int mj = netlist.movable_index(ids[b]);
            const double ex = (ci.width + cj.width) / 2.0 -
                              std::abs(placement.x[mi] - placement.x[mj]);
            const double ey = (ci.height + cj.height) / 2.0 -
                              std::abs(placement.y[mi] - placement.y[mj]);
            if (ex > 0.0 && ey > 0.0) area += ex * ey;
        }
    }
    return area;
}

double oracle_overlap_ratio(const Netlist& netlist, const Placement& placement) {
    const double total = netlist.total_movable_area();
    return total > 0.0 ? oracle_overlap(netlist, placement) / total : 0.0;
}

bool oracle_legal(const Netlist& netlist, const Region& region,
                  const Placement& placement, double area_tol) {
    if (oracle_overlap(netlist, placement) > area_tol) return false;
    for (int cid : netlist.movable_ids()) {
        const Cell& c = netlist.cells()[cid];
        const int mi = netlist.movable_index(cid);
        const double slack = 1e-9 * (region.width + region.height);
        if (placement.x[mi] < c.width / 2.0 - slack ||
            placement.x[mi] > region.width - c.width / 2.0 + slack ||
            placement.y[mi] < c.height / 2.0 - slack ||
            placement.y[mi] > region.height - c.height / 2.0 + slack)
            return false;
    }
    return true;
}

}  // namespace rlplace
