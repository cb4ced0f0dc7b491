#pragma once

#include <utility>

#include "rlplace/netlist.hpp"

namespace rlplace {

struct LegalizeConfig {
    int rounds = 10;
    // Step size of the wirelength descent sub-step; < 0 picks
    // 0.01 * mean cell size, 0 disables the sub-step.
    double wl_lr = -1.0;
    int sweep_cap = 100;
};

struct LegalizeReport {
    double hpwl = 0.0;
    double overlap_area = 0.0;
    int sweeps = 0;
    bool success = false;
};

// Exact de-overlap displacement for cell i against overlapping cell j:
// moves i along the hat-active axis so the pair becomes tangent.
// Throws if the pair does not strictly overlap.
std::pair<double, double> deoverlap_step(const Netlist& netlist, int cell_i,
                                         int cell_j, const Placement& placement);

// Moves a violating coordinate of the cell onto the nearest feasible
// bound; zero displacement for in-bounds cells. Throws if the cell is
// larger than the die.
std::pair<double, double> boundary_snap(const Netlist& netlist, int cell_i,
                                        const Region& region,
                                        const Placement& placement);

// Alternating legalization: wirelength descent, one de-overlap move per
// cell per sweep, boundary snapping; then overlap-only sweeps until the
// placement is clean or the sweep cap is hit.
std::pair<Placement, LegalizeReport> legalize(const Netlist& netlist,
                                              const Region& region,
                                              Placement placement,
                                              const LegalizeConfig& config = {});

}  // namespace rlplace
