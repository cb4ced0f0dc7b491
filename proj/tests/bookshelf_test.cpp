#include <doctest.h>

#include <stdexcept>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rlplace/bookshelf.hpp"
#include "rlplace/standin.hpp"

namespace fs = std::filesystem;
using namespace rlplace;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("rlplace_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

BenchmarkBundle bundle_in(const fs::path& dir, const std::string& name) {
    return {(dir / (name + ".blocks")).string(), (dir / (name + ".nets")).string(),
            (dir / (name + ".pl")).string(), name};
}

}  // namespace

TEST_CASE("parses a minimal hand-written bundle") {
    TempDir tmp;
    write_file(tmp.path / "t.blocks",
               "UCSC blocks 1.0\n"
               "# comment\n"
               "NumSoftRectangularBlocks : 0\n"
               "NumHardRectilinearBlocks : 2\n"
               "NumTerminals : 1\n"
               "sb0 hardrectilinear 4 (0, 0) (0, 43) (28, 43) (28, 0)\n"
               "sb1 hardrectilinear 4 (0, 0) (0, 10) (20, 10) (20, 0)\n"
               "p1 terminal\n");
    write_file(tmp.path / "t.nets",
               "UCLA nets 1.0\n"
               "NumNets : 2\n"
               "NumPins : 5\n"
               "NetDegree : 2\n"
               "sb0\n"
               "p1\n"
               "NetDegree : 3\n"
               "sb0\nsb1\np1\n");
    write_file(tmp.path / "t.pl",
               "UCLA pl 1.0\n"
               "p1 810 400\n");

    auto [nl, region] = parse_bundle(bundle_in(tmp.path, "t"));
    CHECK(nl.num_movable() == 2);
    CHECK(nl.num_terminals() == 1);
    CHECK(nl.num_nets() == 2);
    CHECK(nl.num_pins() == 5);
    CHECK(region.width == 800.0);
    CHECK(nl.cells()[0].width == 28.0);
    CHECK(nl.cells()[0].height == 43.0);
    // terminal outside the die is accepted verbatim
    CHECK(nl.cells()[2].fixed_pos->first == 810.0);
}

TEST_CASE("header/body count mismatch is a parse error") {
    TempDir tmp;
    write_file(tmp.path / "t.blocks",
               "NumHardRectilinearBlocks : 2\nNumTerminals : 0\n"
               "sb0 hardrectilinear 4 (0,0) (0,1) (1,1) (1,0)\n");
    write_file(tmp.path / "t.nets", "NumNets : 0\nNumPins : 0\n");
    write_file(tmp.path / "t.pl", "");
    CHECK_THROWS_WITH_AS(parse_bundle(bundle_in(tmp.path, "t")),
                         doctest::Contains("declares 2"), std::runtime_error);
}

TEST_CASE("truncated nets file reports the line") {
    TempDir tmp;
    write_file(tmp.path / "t.blocks",
               "NumHardRectilinearBlocks : 1\nNumTerminals : 0\n"
               "sb0 hardrectilinear 4 (0,0) (0,1) (1,1) (1,0)\n");
    write_file(tmp.path / "t.nets",
               "NumNets : 1\nNumPins : 2\nNetDegree : 2\nsb0\n");
    write_file(tmp.path / "t.pl", "");
    CHECK_THROWS_WITH_AS(parse_bundle(bundle_in(tmp.path, "t")),
                         doctest::Contains("truncated net"), std::runtime_error);
}

TEST_CASE("unknown block name in a net is an error") {
    TempDir tmp;
    write_file(tmp.path / "t.blocks",
               "NumHardRectilinearBlocks : 1\nNumTerminals : 0\n"
               "sb0 hardrectilinear 4 (0,0) (0,1) (1,1) (1,0)\n");
    write_file(tmp.path / "t.nets",
               "NumNets : 1\nNumPins : 2\nNetDegree : 2\nsb0\nbogus\n");
    write_file(tmp.path / "t.pl", "");
    CHECK_THROWS_WITH_AS(parse_bundle(bundle_in(tmp.path, "t")),
                         doctest::Contains("bogus"), std::runtime_error);
}

TEST_CASE("write_placement converts centers to lower-left corners") {
    TempDir tmp;
    Cell c;
    c.id = 0;
    c.width = 4.0;
    c.height = 2.0;
    c.name = "sb0";
    Net n;
    n.id = 0;
    n.members = {0};
    Netlist nl = build_netlist({c}, {n});
    Placement p;
    p.x = {5.0};
    p.y = {5.0};
    const auto path = (tmp.path / "out.pl").string();
    write_placement(nl, p, path);
    std::ifstream in(path);
    std::string header, blank, name;
    double x, y;
    std::getline(in, header);
    std::getline(in, blank);
    in >> name >> x >> y;
    CHECK(name == "sb0");
    CHECK(x == 3.0);
    CHECK(y == 4.0);
}

TEST_CASE("bundle write-then-parse round-trips counts and coordinates") {
    CircuitInstance inst = make_standin({"n10", 10, 69, 118, 248}, 5);
    TempDir tmp;
    BenchmarkBundle b = bundle_in(tmp.path, "n10");
    write_bundle(inst.netlist, b, &*inst.reference);

    auto [nl2, region] = parse_bundle(b);
    CHECK(nl2.num_movable() == 10);
    CHECK(nl2.num_terminals() == 69);
    CHECK(nl2.num_nets() == 118);
    CHECK(nl2.num_pins() == 248);

    Placement ref2 = parse_block_placement(nl2, b.pl_path);
    for (std::size_t i = 0; i < ref2.size(); ++i) {
        CHECK(ref2.x[i] == doctest::Approx(inst.reference->x[i]).epsilon(1e-6));
        CHECK(ref2.y[i] == doctest::Approx(inst.reference->y[i]).epsilon(1e-6));
    }
}

TEST_CASE("unwritable path surfaces with context") {
    Cell c;
    c.id = 0;
    c.width = 1.0;
    c.height = 1.0;
    c.name = "sb0";
    Net n;
    n.id = 0;
    n.members = {0};
    Netlist nl = build_netlist({c}, {n});
    Placement p;
    p.x = {0.5};
    p.y = {0.5};
    CHECK_THROWS_WITH_AS(write_placement(nl, p, "/nonexistent_dir/x.pl"),
                         doctest::Contains("/nonexistent_dir/x.pl"),
                         std::runtime_error);
}

TEST_CASE("parsing is pure: same bytes, same netlist") {
    CircuitInstance inst = make_standin({"n30", 30, 212, 349, 743}, 2);
    TempDir tmp;
    BenchmarkBundle b = bundle_in(tmp.path, "n30");
    write_bundle(inst.netlist, b);
    auto [a, ra] = parse_bundle(b);
    auto [c, rc] = parse_bundle(b);
    REQUIRE(a.num_cells() == c.num_cells());
    for (int k = 0; k < a.num_nets(); ++k)
        CHECK(a.nets()[k].members == c.nets()[k].members);
}
