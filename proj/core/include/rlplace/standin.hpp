#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlplace/report.hpp"

namespace rlplace {

// Shape of a floorplanning circuit: header counts as they appear in a
// Bookshelf bundle.
struct FloorplanShape {
    std::string name;
    int modules = 0;
    int terminals = 0;
    int nets = 0;
    int pins = 0;
};

// The six GSRC floorplan circuit shapes (n10..n300) on an 800x800 die.
std::vector<FloorplanShape> standard_shapes();

// Deterministic synthetic circuit with exactly the given header counts:
// module sizes drawn to hit the target die utilization, terminals on
// the boundary ring, each net holding at least one module. A legal
// shelf-packed reference floorplan is attached. Used as the benchmark
// fixture when real bundle files are not available.
CircuitInstance make_standin(const FloorplanShape& shape, std::uint64_t seed,
                             Region region = {800.0, 800.0},
                             double utilization = 0.25);

}  // namespace rlplace
