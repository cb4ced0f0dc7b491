#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rlplace {

enum class CellKind { Movable, Terminal };

struct Cell {
    int id = -1;
    double width = 0.0;
    double height = 0.0;
    CellKind kind = CellKind::Movable;
    // Center coordinates; authoritative for terminals, ignored for movables.
    std::optional<std::pair<double, double>> fixed_pos;
    std::string name;

    bool movable() const { return kind == CellKind::Movable; }
};

struct Net {
    int id = -1;
    std::vector<int> members;  // deduplicated cell ids, original order kept
};

struct Region {
    double width = 800.0;
    double height = 800.0;
};

// Center coordinates of the movable cells, indexed by movable index
// (see Netlist::movable_index).
struct Placement {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
};

class Netlist {
  public:
    Netlist(std::vector<Cell> cells, std::vector<Net> nets);

    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<Net>& nets() const { return nets_; }
    // Net ids containing each cell, indexed by cell id.
    const std::vector<std::vector<int>>& incidence() const { return incidence_; }

    int num_cells() const { return static_cast<int>(cells_.size()); }
    int num_nets() const { return static_cast<int>(nets_.size()); }
    int num_movable() const { return num_movable_; }
    int num_terminals() const { return num_cells() - num_movable_; }
    // Sum over nets of member count (after in-net dedup).
    int num_pins() const { return num_pins_; }

    // Index into Placement vectors, or -1 for terminals.
    int movable_index(int cell_id) const { return movable_index_[cell_id]; }
    const std::vector<int>& movable_ids() const { return movable_ids_; }

    double total_movable_area() const;

    // Center position of a cell under the given placement.
    std::pair<double, double> position(int cell_id, const Placement& p) const;

  private:
    std::vector<Cell> cells_;
    std::vector<Net> nets_;
    std::vector<std::vector<int>> incidence_;
    std::vector<int> movable_index_;
    std::vector<int> movable_ids_;
    int num_movable_ = 0;
    int num_pins_ = 0;
};

// Validates net membership, dedups in-net duplicates, builds incidence.
// Throws std::invalid_argument naming the net on a dangling cell reference.
Netlist build_netlist(std::vector<Cell> cells, std::vector<Net> nets);

// Degree of each net in the net-adjacency graph: the number of *other*
// nets sharing at least one cell, each neighbor counted once.
std::vector<int> net_degrees(const Netlist& netlist);

// Rejects any non-finite coordinate; used at API boundaries.
void check_finite(const Placement& p);

struct SyntheticSpec {
    std::uint64_t seed = 0;
    int n_cells = 2;
    int n_nets = 1;
    Region region;
    std::pair<double, double> size_range{10.0, 40.0};
};

// Deterministic random instance: movable cells with sizes uniform in
// size_range, nets of 2-6 distinct cells. Throws if total cell area
// would exceed 60% of the region.
std::pair<Netlist, Region> generate_synthetic(const SyntheticSpec& spec);

}  // namespace rlplace
