#pragma once

#include "rlplace/netlist.hpp"

namespace rlplace {

// Independent HPWL oracle: per-net bounding box via minmax over member
// coordinates. Kept free of any code shared with the objective module
// so the two can cross-check each other.
double oracle_hpwl(const Netlist& netlist, const Placement& placement);

// Exact total pairwise rectangle-overlap area over movable cells,
// brute force O(N^2).
double oracle_overlap(const Netlist& netlist, const Placement& placement);

// oracle_overlap divided by total movable-cell area.
double oracle_overlap_ratio(const Netlist& netlist, const Placement& placement);

// True when no pair overlaps (area <= tol) and every movable cell lies
// inside the die (closed intervals).
bool oracle_legal(const Netlist& netlist, const Region& region,
                  const Placement& placement, double area_tol = 0.0);

}  // namespace rlplace
