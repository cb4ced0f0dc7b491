#include "rlplace/bookshelf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rlplace {
namespace {

struct LineReader {
    std::ifstream in;
    std::string path;
    int lineno = 0;

    explicit LineReader(const std::string& p) : in(p), path(p) {
        if (!in) throw std::runtime_error("cannot open " + p);
    }

    // Next non-empty line with comments stripped; false at EOF.
    bool next(std::string& out) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
            // strip CR and check for content
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                                     line.back() == '\t'))
                line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
    }
};

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

// "Key : value" -> value as long, or nullopt if key does not match.
std::optional<long> header_value(const std::string& line, const std::string& key) {
    if (!starts_with(line, key)) return std::nullopt;
    auto colon = line.find(':');
    if (colon == std::string::npos) return std::nullopt;
    return std::stol(line.substr(colon + 1));
}

std::vector<double> parse_numbers(const std::string& s) {
    std::string cleaned = s;
    for (char& c : cleaned)
        if (c == '(' || c == ')' || c == ',') c = ' ';
    std::istringstream is(cleaned);
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    return out;
}

struct RawBlock {
    std::string name;
    double width = 0.0, height = 0.0;
    bool terminal = false;
};

std::vector<RawBlock> parse_blocks_file(const std::string& path) {
    LineReader rd(path);
    std::string line;
    long num_hard = -1, num_soft = 0, num_terminals = -1;
    std::vector<RawBlock> blocks;

    while (rd.next(line)) {
        if (starts_with(line, "UCSC") || starts_with(line, "UCLA")) continue;
        if (auto v = header_value(line, "NumSoftRectangularBlocks")) { num_soft = *v; continue; }
        if (auto v = header_value(line, "NumHardRectilinearBlocks")) { num_hard = *v; continue; }
        if (auto v = header_value(line, "NumTerminals")) { num_terminals = *v; continue; }

        std::istringstream is(line);
        std::string name, kind;
        is >> name >> kind;
        if (kind == "terminal") {
            blocks.push_back({name, 0.0, 0.0, true});
        } else if (kind == "hardrectilinear") {
            int nverts = 0;
            is >> nverts;
            std::string rest;
            std::getline(is, rest);
            auto nums = parse_numbers(rest);
            // vertices may continue on following lines
            while (static_cast<int>(nums.size()) < 2 * nverts) {
                std::string extra;
                if (!rd.next(extra)) rd.fail("unexpected EOF in vertex list of " + name);
                auto more = parse_numbers(extra);
                nums.insert(nums.end(), more.begin(), more.end());
            }
            if (static_cast<int>(nums.size()) != 2 * nverts)
                rd.fail("malformed vertex list for block " + name);
            double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
            double ymin = xmin, ymax = -xmin;
            for (int i = 0; i < nverts; ++i) {
                xmin = std::min(xmin, nums[2 * i]);
                xmax = std::max(xmax, nums[2 * i]);
                ymin = std::min(ymin, nums[2 * i + 1]);
                ymax = std::max(ymax, nums[2 * i + 1]);
            }
            blocks.push_back({name, xmax - xmin, ymax - ymin, false});
        } else {
            rd.fail("unrecognized block record: " + line);
        }
    }
    if (num_soft != 0)
        throw std::runtime_error(path + ": soft rectangular blocks are not supported");

    long got_hard = std::count_if(blocks.begin(), blocks.end(),
                                  [](const RawBlock& b) { return !b.terminal; });
    long got_term = static_cast<long>(blocks.size()) - got_hard;
    if (num_hard >= 0 && got_hard != num_hard)
        throw std::runtime_error(path + ": header declares " + std::to_string(num_hard) +
                                 " blocks, found " + std::to_string(got_hard));
    if (num_terminals >= 0 && got_term != num_terminals)
        throw std::runtime_error(path + ": header declares " + std::to_string(num_terminals) +
                                 " terminals, found " + std::to_string(got_term));
    return blocks;
}

std::vector<std::vector<std::string>> parse_nets_file(const std::string& path,
                                                      long* declared_pins) {
    LineReader rd(path);
    std::string line;
    long num_nets = -1, num_pins = -1;
    std::vector<std::vector<std::string>> nets;
    long pin_count = 0;

    while (rd.next(line)) {
        if (starts_with(line, "UCLA") || starts_with(line, "UCSC")) continue;
        if (auto v = header_value(line, "NumNets")) { num_nets = *v; continue; }
        if (auto v = header_value(line, "NumPins")) { num_pins = *v; continue; }
        if (auto v = header_value(line, "NetDegree")) {
            long degree = *v;
            if (degree < 1) rd.fail("NetDegree must be >= 1");
            std::vector<std::string> members;
            for (long i = 0; i < degree; ++i) {
                std::string member_line;
                if (!rd.next(member_line))
                    rd.fail("truncated net: expected " + std::to_string(degree) +
                            " members, got " + std::to_string(i));
                std::istringstream is(member_line);
                std::string name;
                is >> name;
                members.push_back(name);
            }
            pin_count += degree;
            nets.push_back(std::move(members));
            continue;
        }
        rd.fail("unexpected line in nets file: " + line);
    }
    if (num_nets >= 0 && static_cast<long>(nets.size()) != num_nets)
        throw std::runtime_error(path + ": header declares " + std::to_string(num_nets) +
                                 " nets, found " + std::to_string(nets.size()));
    if (num_pins >= 0 && pin_count != num_pins)
        throw std::runtime_error(path + ": header declares " + std::to_string(num_pins) +
                                 " pins, found " + std::to_string(pin_count));
    if (declared_pins) *declared_pins = pin_count;
    return nets;
}

std::unordered_map<std::string, std::pair<double, double>> parse_pl_file(
    const std::string& path) {
    LineReader rd(path);
    std::string line;
    std::unordered_map<std::string, std::pair<double, double>> pos;
    while (rd.next(line)) {
        if (starts_with(line, "UCLA") || starts_with(line, "UCSC")) continue;
        std::istringstream is(line);
        std::string name;
        double x, y;
        if (!(is >> name >> x >> y)) rd.fail("malformed placement line: " + line);
        pos[name] = {x, y};
    }
    return pos;
}

}  // namespace

std::pair<Netlist, Region> parse_bundle(const BenchmarkBundle& bundle,
                                        const Region& region) {
    auto raw_blocks = parse_blocks_file(bundle.blocks_path);
    auto raw_nets = parse_nets_file(bundle.nets_path, nullptr);
    auto pl = parse_pl_file(bundle.pl_path);

    // movable blocks first, terminals after, both in file order
    std::vector<Cell> cells;
    std::unordered_map<std::string, int> by_name;
    for (const auto& b : raw_blocks) {
        if (b.terminal) continue;
        Cell c;
        c.id = static_cast<int>(cells.size());
        c.width = b.width;
        c.height = b.height;
        c.kind = CellKind::Movable;
        c.name = b.name;
        by_name[b.name] = c.id;
        cells.push_back(std::move(c));
    }
    for (const auto& b : raw_blocks) {
        if (!b.terminal) continue;
        auto it = pl.find(b.name);
        if (it == pl.end())
            throw std::runtime_error(bundle.pl_path + ": no coordinates for terminal " +
                                     b.name);
        Cell c;
        c.id = static_cast<int>(cells.size());
        c.kind = CellKind::Terminal;
        c.fixed_pos = it->second;
        c.name = b.name;
        by_name[b.name] = c.id;
        cells.push_back(std::move(c));
    }

    std::vector<Net> nets(raw_nets.size());
    for (std::size_t k = 0; k < raw_nets.size(); ++k) {
        nets[k].id = static_cast<int>(k);
        for (const auto& name : raw_nets[k]) {
            auto it = by_name.find(name);
            if (it == by_name.end())
                throw std::runtime_error(bundle.nets_path + ": net " + std::to_string(k) +
                                         " references unknown block " + name);
            nets[k].members.push_back(it->second);
        }
    }
    return {build_netlist(std::move(cells), std::move(nets)), region};
}

Placement parse_block_placement(const Netlist& netlist, const std::string& pl_path) {
    auto pl = parse_pl_file(pl_path);
    Placement p;
    p.x.resize(netlist.num_movable());
    p.y.resize(netlist.num_movable());
    for (int cid : netlist.movable_ids()) {
        const Cell& c = netlist.cells()[cid];
        auto it = pl.find(c.name);
        if (it == pl.end())
            throw std::runtime_error(pl_path + ": no coordinates for block " + c.name);
        const int mi = netlist.movable_index(cid);
        p.x[mi] = it->second.first + c.width / 2.0;
        p.y[mi] = it->second.second + c.height / 2.0;
    }
    check_finite(p);
    return p;
}

void write_placement(const Netlist& netlist, const Placement& placement,
                     const std::string& path) {
    if (static_cast<int>(placement.size()) != netlist.num_movable())
        throw std::invalid_argument("placement size does not match movable count");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "UCLA pl 1.0\n\n";
    out.precision(17);
    for (int cid : netlist.movable_ids()) {
        const Cell& c = netlist.cells()[cid];
        const int mi = netlist.movable_index(cid);
        out << c.name << " " << placement.x[mi] - c.width / 2.0 << " "
            << placement.y[mi] - c.height / 2.0 << "\n";
    }
    for (const Cell& c : netlist.cells()) {
        if (c.movable()) continue;
        out << c.name << " " << c.fixed_pos->first << " " << c.fixed_pos->second << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_bundle(const Netlist& netlist, const BenchmarkBundle& bundle,
                  const Placement* block_placement) {
    {
        std::ofstream out(bundle.blocks_path);
        if (!out) throw std::runtime_error("cannot open " + bundle.blocks_path);
        out << "UCSC blocks 1.0\n\n";
        out << "NumSoftRectangularBlocks : 0\n";
        out << "NumHardRectilinearBlocks : " << netlist.num_movable() << "\n";
        out << "NumTerminals : " << netlist.num_terminals() << "\n\n";
        out.precision(17);
        for (const Cell& c : netlist.cells()) {
            if (!c.movable()) continue;
            out << c.name << " hardrectilinear 4 (0, 0) (0, " << c.height << ") ("
                << c.width << ", " << c.height << ") (" << c.width << ", 0)\n";
        }
        for (const Cell& c : netlist.cells()) {
            if (c.movable()) continue;
            out << c.name << " terminal\n";
        }
    }
    {
        std::ofstream out(bundle.nets_path);
        if (!out) throw std::runtime_error("cannot open " + bundle.nets_path);
        out << "UCLA nets 1.0\n\n";
        out << "NumNets : " << netlist.num_nets() << "\n";
        out << "NumPins : " << netlist.num_pins() << "\n\n";
        for (const Net& net : netlist.nets()) {
            out << "NetDegree : " << net.members.size() << "\n";
            for (int cid : net.members) out << netlist.cells()[cid].name << "\n";
        }
    }
    {
        std::ofstream out(bundle.pl_path);
        if (!out) throw std::runtime_error("cannot open " + bundle.pl_path);
        out << "UCLA pl 1.0\n\n";
        out.precision(17);
        if (block_placement) {
            for (int cid : netlist.movable_ids()) {
                const Cell& c = netlist.cells()[cid];
                const int mi = netlist.movable_index(cid);
                out << c.name << " " << block_placement->x[mi] - c.width / 2.0 << " "
                    << block_placement->y[mi] - c.height / 2.0 << "\n";
            }
        }
        for (const Cell& c : netlist.cells()) {
            if (c.movable()) continue;
            out << c.name << " " << c.fixed_pos->first << " " << c.fixed_pos->second
                << "\n";
        }
    }
}

}  // namespace rlplace
