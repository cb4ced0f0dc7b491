#pragma once

#include <string>

#include "rlplace/netlist.hpp"

namespace rlplace {

// Renders the die outline, movable cells as labeled rectangles
// (overlapping ones tinted red), and terminals as dots. Output bytes
// are deterministic for a fixed input.
std::string render_svg(const Netlist& netlist, const Region& region,
                       const Placement& placement);

void render_svg_file(const Netlist& netlist, const Region& region,
                     const Placement& placement, const std::string& path);

}  // namespace rlplace
