#pragma once

#include <string>

#include "rlplace/netlist.hpp"

namespace rlplace {

struct BenchmarkBundle {
    std::string blocks_path;
    std::string nets_path;
    std::string pl_path;
    std::string circuit_name;
};

// Parses a GSRC Bookshelf floorplan bundle. Blocks become movable cells
// (axis-aligned bounding box of their vertex list), terminals take their
// coordinates from the .pl file. The die region comes from `region`, not
// from the files. Throws std::runtime_error with a line number on
// malformed input or header/body count mismatch.
std::pair<Netlist, Region> parse_bundle(const BenchmarkBundle& bundle,
                                        const Region& region = Region{});

// Reads movable-block centers from a .pl file that places every block
// (e.g. the reference floorplan shipped with a benchmark). Coordinates
// in the file are lower-left corners.
Placement parse_block_placement(const Netlist& netlist, const std::string& pl_path);

// Writes one line per movable block: name, lower-left x, lower-left y.
void write_placement(const Netlist& netlist, const Placement& placement,
                     const std::string& path);

// Writes a netlist as a GSRC-format bundle (.blocks/.nets/.pl). Terminal
// positions go into the .pl; an optional block placement is appended so
// the bundle carries a reference floorplan.
void write_bundle(const Netlist& netlist, const BenchmarkBundle& bundle,
                  const Placement* block_placement = nullptr);

}  // namespace rlplace
