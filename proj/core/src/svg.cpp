#include "rlplace/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace rlplace {
namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Netlist& netlist, const Region& region,
                       const Placement& placement) {
    const double margin = 0.05 * std::max(region.width, region.height);
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(-margin) +
           " " + num(-margin) + " " + num(region.width + 2 * margin) + " " +
           num(region.height + 2 * margin) + "\">\n";
    // y axis flipped so (0,0) sits at the lower-left
    svg += "<g transform=\"translate(0," + num(region.height) + ") scale(1,-1)\">\n";
    svg += "<rect class=\"die\" x=\"0\" y=\"0\" width=\"" + num(region.width) +
           "\" height=\"" + num(region.height) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // tint cells that overlap some other movable cell
    const auto& ids = netlist.movable_ids();
    std::vector<char> hot(ids.size(), 0);
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
            if (ex > 0.0 && ey > 0.0) hot[a] = hot[b] = 1;
        }
    }

    for (std::size_t a = 0; a < ids.size(); ++a) {
        const Cell& c = netlist.cells()[ids[a]];
        const int mi = netlist.movable_index(ids[a]);
        const double x0 = placement.x[mi] - c.width / 2.0;
        const double y0 = placement.y[mi] - c.height / 2.0;
        svg += "<rect class=\"cell\" x=\"" + num(x0) + "\" y=\"" + num(y0) +
               "\" width=\"" + num(c.width) + "\" height=\"" + num(c.height) +
               "\" fill=\"" + (hot[a] ? "#e07070" : "#7fa8d9") +
               "\" fill-opacity=\"0.7\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
        svg += "<text x=\"" + num(placement.x[mi]) + "\" y=\"" + num(placement.y[mi]) +
               "\" font-size=\"" + num(std::min(c.width, c.height) * 0.4) +
               "\" text-anchor=\"middle\" transform=\"translate(0," +
               num(2 * placement.y[mi]) + ") scale(1,-1)\">" +
               std::to_string(ids[a]) + "</text>\n";
    }

    for (const Cell& c : netlist.cells()) {
        if (c.movable()) continue;
        svg += "<circle cx=\"" + num(c.fixed_pos->first) + "\" cy=\"" +
               num(c.fixed_pos->second) + "\" r=\"2\" fill=\"#222222\"/>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

void render_svg_file(const Netlist& netlist, const Region& region,
                     const Placement& placement, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << render_svg(netlist, region, placement);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rlplace
