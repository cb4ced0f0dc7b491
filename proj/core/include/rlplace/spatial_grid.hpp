#pragma once

#include <vector>

#include "rlplace/netlist.hpp"
#include "rlplace/objective.hpp"

namespace rlplace {

// Uniform-grid broad phase over movable cells. Each cell is inserted
// into every bin its closed rectangle touches; cells hanging outside
// the die land in the boundary ring of bins, so candidate generation
// stays sound for any placement.
class UniformGrid {
  public:
    UniformGrid(const Netlist& netlist, const Region& region,
                const Placement& placement, double bin_w, double bin_h);

    // Unordered pairs sharing at least one bin, each emitted once,
    // sorted. A superset of all truly overlapping pairs.
    std::vector<CellPair> candidate_pairs() const;

    int bins_x() const { return nx_; }
    int bins_y() const { return ny_; }
    const std::vector<std::vector<int>>& occupancy() const { return bins_; }

  private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<std::vector<int>> bins_;  // cell ids per bin, row-major
};

// Default bin size: the largest cell extent, one value per axis.
double default_bin_w(const Netlist& netlist);
double default_bin_h(const Netlist& netlist);

// Convenience: build a grid with default bin sizes and return its pairs.
std::vector<CellPair> broad_phase_pairs(const Netlist& netlist, const Region& region,
                                        const Placement& placement);

// Exhaustive movable-pair list, for oracles and small instances.
std::vector<CellPair> all_movable_pairs(const Netlist& netlist);

}  // namespace rlplace
