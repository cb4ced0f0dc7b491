#include "rlplace/standin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace rlplace {

std::vector<FloorplanShape> standard_shapes() {
    return {
        {"n10", 10, 69, 118, 248},    {"n30", 30, 212, 349, 743},
        {"n50", 50, 209, 485, 1050},  {"n100", 100, 334, 885, 1873},
        {"n200", 200, 564, 1585, 3599}, {"n300", 300, 569, 1893, 4358},
    };
}

CircuitInstance make_standin(const FloorplanShape& shape, std::uint64_t seed,
                             Region region, double utilization) {
    if (shape.modules < 1 || shape.nets < 1)
        throw std::invalid_argument("shape needs at least one module and net");
    if (shape.pins < 2 * shape.nets)
        throw std::invalid_argument("pin count below 2 per net");

    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(shape.name));

    // module areas: lognormal weights scaled to the utilization target
    std::lognormal_distribution<double> area_dist(0.0, 0.6);
    std::uniform_real_distribution<double> aspect_dist(0.6, 1.7);
    std::vector<double> areas(shape.modules);
    double wsum = 0.0;
    for (double& a : areas) { a = area_dist(rng); wsum += a; }
    const double target = utilization * region.width * region.height;
    for (double& a : areas) a *= target / wsum;

    std::vector<Cell> cells;
    for (int i = 0; i < shape.modules; ++i) {
        Cell c;
        c.id = static_cast<int>(cells.size());
        const double aspect = aspect_dist(rng);
        c.width = std::min(std::sqrt(areas[i] * aspect), 0.5 * region.width);
        c.height = std::min(std::sqrt(areas[i] / aspect), 0.5 * region.height);
        c.name = "sb" + std::to_string(i);
        cells.push_back(std::move(c));
    }

    // terminals spread evenly along the die boundary
    const double perimeter = 2.0 * (region.width + region.height);
    for (int t = 0; t < shape.terminals; ++t) {
        const double s = perimeter * (t + 0.5) / shape.terminals;
        double x, y;
        if (s < region.width) { x = s; y = 0.0; }
        else if (s < region.width + region.height) { x = region.width; y = s - region.width; }
        else if (s < 2 * region.width + region.height) {
            x = s - region.width - region.height; y = region.height;
        } else { x = 0.0; y = s - 2 * region.width - region.height; }
        Cell c;
        c.id = static_cast<int>(cells.size());
        c.kind = CellKind::Terminal;
        c.fixed_pos = {x, y};
        c.name = "p" + std::to_string(t + 1);
        cells.push_back(std::move(c));
    }

    // net degrees: start at 2, then hand out the remaining pins rich-get-
    // richer (urn) so the distribution gets the heavy tail of real netlists
    // (most nets 2-3 pins, a few wide buses/clock-like nets)
    std::vector<int> degrees(shape.nets, 2);
    {
        const int degree_cap = 16;
        int extra = shape.pins - 2 * shape.nets;
        std::vector<int> urn(shape.nets);
        std::iota(urn.begin(), urn.end(), 0);
        while (extra > 0) {
            std::uniform_int_distribution<std::size_t> pick(0, urn.size() - 1);
            const int k = urn[pick(rng)];
            if (degrees[k] >= degree_cap) continue;
            ++degrees[k];
            --extra;
            urn.push_back(k);
        }
    }

    // latent geometry: modules get latent locations from a random-order
    // shelf pack stretched over the die, terminals keep their boundary
    // points, and nets mostly connect latent neighbors. Wiring built on a
    // packable layout is realizable with short nets at full density, the
    // way real netlists are; wiring built on arbitrary random points is
    // not, and turns the endgame into a wirelength/penalty tug-of-war.
    const int n_all = static_cast<int>(cells.size());
    std::vector<double> lx(n_all), ly(n_all);
    {
        std::vector<int> lorder(shape.modules);
        std::iota(lorder.begin(), lorder.end(), 0);
        std::shuffle(lorder.begin(), lorder.end(), rng);
        std::vector<std::vector<int>> rows;
        std::vector<double> row_w;
        double used_h = 0.0, cx = 0.0, rh = 0.0;
        for (int cid : lorder) {
            if (rows.empty() || cx + cells[cid].width > region.width) {
                if (!rows.empty()) { row_w.push_back(cx); used_h += rh; }
                rows.emplace_back();
                cx = 0.0;
                rh = 0.0;
            }
            rows.back().push_back(cid);
            cx += cells[cid].width;
            rh = std::max(rh, cells[cid].height);
        }
        row_w.push_back(cx);
        used_h += rh;
        // stretch rows across the full die so whitespace spreads evenly
        const double sy = region.height / used_h;
        double base_y = 0.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const double sx = region.width / row_w[r];
            double x = 0.0;
            double row_h = 0.0;
            for (int cid : rows[r]) row_h = std::max(row_h, cells[cid].height);
            for (int cid : rows[r]) {
                lx[cid] = (x + cells[cid].width / 2.0) * sx;
                ly[cid] = base_y + row_h * sy / 2.0;
                x += cells[cid].width;
            }
            base_y += row_h * sy;
        }
        // jitter the latent locations in proportion to module area: big
        // hub blocks sit in contested neighborhoods that the placer must
        // untangle, while leaf cells wire to their immediate neighbors and
        // drop into place
        const double latent_jitter = 0.15;
        const double amax = *std::max_element(areas.begin(), areas.end());
        std::normal_distribution<double> jit(0.0, latent_jitter);
        for (int i = 0; i < shape.modules; ++i) {
            const double s = areas[i] / amax;
            lx[i] = std::clamp(lx[i] + jit(rng) * s * region.width, 0.0, region.width);
            ly[i] = std::clamp(ly[i] + jit(rng) * s * region.height, 0.0, region.height);
        }
        for (int i = shape.modules; i < n_all; ++i) {
            lx[i] = cells[i].fixed_pos->first;
            ly[i] = cells[i].fixed_pos->second;
        }
    }
    auto latent_dist2 = [&](int a, int b) {
        const double dx = lx[a] - lx[b], dy = ly[a] - ly[b];
        return dx * dx + dy * dy;
    };

    std::uniform_int_distribution<int> cell_dist(0, n_all - 1);
    // anchors drawn in proportion to module area: big modules carry more
    // pins in real designs (Rent-style size/pin correlation), which is what
    // makes overlap area concentrate on highly connected blocks
    std::discrete_distribution<int> module_dist(areas.begin(), areas.end());
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<int> near(n_all);
    std::vector<Net> nets(shape.nets);
    for (int k = 0; k < shape.nets; ++k) {
        nets[k].id = k;
        std::unordered_set<int> picked;
        // anchor on a module so every net constrains the placement
        int anchor = module_dist(rng);
        picked.insert(anchor);
        nets[k].members.push_back(anchor);

        // wide nets span a wider latent region
        const int neighborhood = std::min(n_all - 1, std::max(8, 2 * degrees[k]));
        std::iota(near.begin(), near.end(), 0);
        std::nth_element(near.begin(), near.begin() + neighborhood, near.end(),
                         [&](int a, int b) {
                             return latent_dist2(anchor, a) < latent_dist2(anchor, b);
                         });
        std::uniform_int_distribution<int> near_dist(0, neighborhood - 1);
        while (static_cast<int>(picked.size()) < degrees[k]) {
            // mostly local members, with a small global share
            int cid = coin(rng) < 0.95 ? near[near_dist(rng)] : cell_dist(rng);
            if (picked.insert(cid).second) nets[k].members.push_back(cid);
        }
    }

    CircuitInstance instance{shape.name,
                             build_netlist(std::move(cells), std::move(nets)), region,
                             std::nullopt};

    // shelf-packed legal reference floorplan in height order, the way an
    // area-driven floorplanner would pack without regard to connectivity
    std::vector<int> order(shape.modules);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return instance.netlist.cells()[a].height > instance.netlist.cells()[b].height;
    });
    Placement ref;
    ref.x.resize(shape.modules);
    ref.y.resize(shape.modules);
    double cur_x = 0.0, cur_y = 0.0, row_h = 0.0;
    for (int cid : order) {
        const Cell& c = instance.netlist.cells()[cid];
        if (cur_x + c.width > region.width) {
            cur_y += row_h;
            cur_x = 0.0;
            row_h = 0.0;
        }
        if (cur_y + c.height > region.height)
            throw std::runtime_error("standin reference packing does not fit the die");
        const int mi = instance.netlist.movable_index(cid);
        ref.x[mi] = cur_x + c.width / 2.0;
        ref.y[mi] = cur_y + c.height / 2.0;
        cur_x += c.width;
        row_h = std::max(row_h, c.height);
    }
    instance.reference = std::move(ref);
    return instance;
}

}  // namespace rlplace
