#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "rlplace/legalizer.hpp"
#include "rlplace/metrics.hpp"
#include "test_util.hpp"

using namespace rlplace;
using namespace rlplace::testutil;

namespace {

Netlist cells_only(std::vector<Cell> cells, std::vector<Net> nets = {}) {
    if (nets.empty()) {
        Net n;
        n.id = 0;
        n.members = {0};
        nets.push_back(n);
    }
    return build_netlist(std::move(cells), std::move(nets));
}

}  // namespace

TEST_CASE("deoverlap moves the wider pair to exact tangency") {
    // widths 4 and 2, x-distance 2, y aligned: w_ij = 3, the x branch is
    // active and cell 0 must move 1 unit away
    Netlist nl = cells_only({movable_cell(0, 4, 4), movable_cell(1, 2, 4)});
    Placement p{{0.0, 2.0}, {5.0, 5.0}};
    auto [dx, dy] = deoverlap_step(nl, 0, 1, p);
    CHECK(dx == doctest::Approx(-1.0));
    CHECK(dy == 0.0);
    p.x[0] += dx;
    CHECK(std::abs(p.x[0] - p.x[1]) == doctest::Approx(3.0));
    CHECK(oracle_overlap(nl, p) == doctest::Approx(0.0));
}

TEST_CASE("coincident centers break the tie toward +x") {
    Netlist nl = cells_only({movable_cell(0, 2, 2), movable_cell(1, 2, 2)});
    Placement p{{5.0, 5.0}, {5.0, 5.0}};
    auto [dx, dy] = deoverlap_step(nl, 0, 1, p);
    CHECK(dx == doctest::Approx(2.0));  // w_ij
    CHECK(dy == 0.0);
}

TEST_CASE("y branch is chosen when the offset is steeper in y") {
    // dx/w = 0.2/2 < dy/h = 0.5/2 -> y branch
    Netlist nl = cells_only({movable_cell(0, 2, 2), movable_cell(1, 2, 2)});
    Placement p{{5.0, 5.2}, {5.0, 5.5}};
    auto [dx, dy] = deoverlap_step(nl, 1, 0, p);
    CHECK(dx == 0.0);
    CHECK(dy == doctest::Approx(7.0 - 5.5));  // to tangency at y_j + h_ij
}

TEST_CASE("non-overlapping pair is rejected") {
    Netlist nl = cells_only({movable_cell(0, 2, 2), movable_cell(1, 2, 2)});
    Placement tangent{{0.0, 2.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(deoverlap_step(nl, 0, 1, tangent), std::invalid_argument);
}

TEST_CASE("boundary snap clamps violating coordinates only") {
    Netlist nl = cells_only({movable_cell(0, 2, 4)});
    Region region{10, 10};

    Placement out{{-1.0}, {5.0}};
    auto [dx, dy] = boundary_snap(nl, 0, region, out);
    CHECK(dx == doctest::Approx(2.0));  // -1 -> 1 = w/2
    CHECK(dy == 0.0);

    Placement in{{5.0}, {5.0}};
    auto [dx2, dy2] = boundary_snap(nl, 0, region, in);
    CHECK(dx2 == 0.0);
    CHECK(dy2 == 0.0);

    Placement corner{{11.0}, {9.5}};
    auto [dx3, dy3] = boundary_snap(nl, 0, region, corner);
    CHECK(dx3 == doctest::Approx(9.0 - 11.0));
    CHECK(dy3 == doctest::Approx(8.0 - 9.5));
}

TEST_CASE("cell larger than the die is rejected") {
    Netlist nl = cells_only({movable_cell(0, 20, 2)});
    Placement p{{5.0}, {5.0}};
    CHECK_THROWS_AS(boundary_snap(nl, 0, {10, 10}, p), std::invalid_argument);
}

TEST_CASE("legal placement is a fixed point when wirelength descent is off") {
    Netlist nl = cells_only({movable_cell(0, 2, 2), movable_cell(1, 2, 2)},
                            {[] {
                                Net n;
                                n.id = 0;
                                n.members = {0, 1};
                                return n;
                            }()});
    Placement p{{2.0, 8.0}, {2.0, 2.0}};
    LegalizeConfig cfg;
    cfg.wl_lr = 0.0;
    auto [out, report] = legalize(nl, {10, 10}, p, cfg);
    CHECK(report.success);
    CHECK(out.x[0] == p.x[0]);
    CHECK(out.x[1] == p.x[1]);
    CHECK(out.y[0] == p.y[0]);
    CHECK(out.y[1] == p.y[1]);
}

TEST_CASE("single overlapping pair is resolved to tangency") {
    Netlist nl = cells_only({movable_cell(0, 4, 4), movable_cell(1, 4, 4)});
    Placement p{{10.0, 12.0}, {10.0, 10.0}};
    LegalizeConfig cfg;
    cfg.wl_lr = 0.0;
    auto [out, report] = legalize(nl, {40, 40}, p, cfg);
    CHECK(report.success);
    CHECK(oracle_overlap(nl, out) <= 1e-9);
    CHECK(std::abs(out.x[0] - out.x[1]) >= 4.0 - 1e-9);
}

TEST_CASE("overlapping chain of three is resolved") {
    Netlist nl = cells_only({movable_cell(0, 4, 4), movable_cell(1, 4, 4),
                             movable_cell(2, 4, 4)});
    Placement p{{10.0, 12.0, 14.0}, {10.0, 10.0, 10.0}};
    auto [out, report] = legalize(nl, {60, 60}, p);
    CHECK(report.success);
    CHECK(oracle_legal(nl, {60, 60}, out, 1e-9 * nl.total_movable_area()));
}

TEST_CASE("cluttered random instances legalize cleanly") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto [nl, region] = generate_synthetic(
            {.seed = 100 + static_cast<std::uint64_t>(trial),
             .n_cells = 25,
             .n_nets = 30,
             .region = {120, 120},
             .size_range = {4.0, 12.0}});
        Placement p = random_placement(nl, region, rng);
        auto [out, report] = legalize(nl, region, p);
        CHECK(report.success);
        CHECK(oracle_legal(nl, region, out, 1e-9 * nl.total_movable_area()));
        CHECK(report.hpwl == doctest::Approx(oracle_hpwl(nl, out)));
    }
}

TEST_CASE("overfull die fails honestly") {
    std::vector<Cell> cells;
    for (int i = 0; i < 6; ++i) cells.push_back(movable_cell(i, 40, 40));
    Netlist nl = cells_only(std::move(cells));
    Placement p{{30, 30, 30, 30, 30, 30}, {30, 30, 30, 30, 30, 30}};
    auto [out, report] = legalize(nl, {60, 60}, p);  // 9600 area in a 3600 die
    CHECK_FALSE(report.success);
    CHECK(report.sweeps >= 1);
}
