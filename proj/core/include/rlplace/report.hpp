#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlplace/legalizer.hpp"
#include "rlplace/netlist.hpp"
#include "rlplace/optimizer.hpp"

namespace rlplace {

enum class MethodKind { Rbsm, Gd, Adam };

MethodKind parse_method(const std::string& name);
std::string method_name(MethodKind m);

struct RunReport {
    std::string circuit;
    std::string method;
    std::uint64_t seed = 0;
    double hpwl = 0.0;
    double overlap = 0.0;
    double time_s = 0.0;
    std::optional<double> lhpwl;
    bool legal = false;
};

struct CircuitInstance {
    std::string name;
    Netlist netlist;
    Region region;
    // Reference floorplan (e.g. the one shipped with a benchmark).
    std::optional<Placement> reference;
};

struct RunOutput {
    RunReport report;
    Placement placement;            // optimizer output
    std::optional<Placement> legalized;
    IterationTrace trace;
};

// Runs one (circuit, method, seed); wall time covers the optimizer run
// only, and hpwl/overlap are recomputed with the metric oracles, never
// copied from the trace.
RunOutput run_single(const CircuitInstance& instance, MethodKind method,
                     RbsmConfig config, bool do_legalize = true,
                     const LegalizeConfig& legal_cfg = {});

std::string reports_to_csv(const std::vector<RunReport>& reports);
std::vector<RunReport> parse_reports_csv(const std::string& csv);
void write_csv_file(const std::vector<RunReport>& reports, const std::string& path);

struct SuiteConfig {
    std::vector<MethodKind> methods{MethodKind::Rbsm, MethodKind::Gd, MethodKind::Adam};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    RbsmConfig base;
    bool legalize = true;
    // Wall time is the only nondeterministic CSV field; disable it to get
    // byte-reproducible output (time_s written as 0).
    bool record_time = true;
    // When set, also sweep the four enhancement toggles on each circuit
    // and report rows labeled by variant (original, random-batch,
    // fix-gamma, no-mean-force, no-perturbation).
    bool ablation = false;
};

// Cross product of circuits x methods x seeds, sorted per-seed rows
// followed by a median row per (circuit, method).
std::vector<RunReport> run_benchmark(const std::vector<CircuitInstance>& circuits,
                                     const SuiteConfig& suite);

// Ablation sweep (RBSM variants) with the method column carrying the
// variant label.
std::vector<RunReport> run_ablation(const std::vector<CircuitInstance>& circuits,
                                    const SuiteConfig& suite);

double median(std::vector<double> values);

}  // namespace rlplace
