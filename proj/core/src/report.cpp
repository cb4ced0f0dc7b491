#include "rlplace/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rlplace/metrics.hpp"

namespace rlplace {
namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

RunReport median_row(const std::string& circuit, const std::string& method,
                     const std::vector<RunReport>& rows) {
    std::vector<double> h, o, t, lh;
    bool all_legal = true, any_lhpwl = false;
    for (const auto& r : rows) {
        h.push_back(r.hpwl);
        o.push_back(r.overlap);
        t.push_back(r.time_s);
        if (r.lhpwl) { lh.push_back(*r.lhpwl); any_lhpwl = true; }
        all_legal = all_legal && r.legal;
    }
    RunReport m;
    m.circuit = circuit;
    m.method = method + "-median";
    m.seed = 0;
    m.hpwl = median(h);
    m.overlap = median(o);
    m.time_s = median(t);
    if (any_lhpwl) m.lhpwl = median(lh);
    m.legal = all_legal;
    return m;
}

}  // namespace

MethodKind parse_method(const std::string& name) {
    if (name == "rbsm") return MethodKind::Rbsm;
    if (name == "gd") return MethodKind::Gd;
    if (name == "adam") return MethodKind::Adam;
    throw std::invalid_argument("unknown method: " + name +
                                " (expected rbsm, gd, or adam)");
}

std::string method_name(MethodKind m) {
    switch (m) {
        case MethodKind::Rbsm: return "rbsm";
        case MethodKind::Gd: return "gd";
        case MethodKind::Adam: return "adam";
    }
    return "?";
}

RunOutput run_single(const CircuitInstance& instance, MethodKind method,
                     RbsmConfig config, bool do_legalize,
                     const LegalizeConfig& legal_cfg) {
    using clock = std::chrono::steady_clock;
    RunOutput out;
    out.report.circuit = instance.name;
    out.report.method = method_name(method);
    out.report.seed = config.seed;

    const auto t0 = clock::now();
    RunResult result;
    switch (method) {
        case MethodKind::Rbsm: result = rbsm_run(instance.netlist, instance.region, config); break;
        case MethodKind::Gd: result = gd_run(instance.netlist, instance.region, config); break;
        case MethodKind::Adam: result = adam_run(instance.netlist, instance.region, config); break;
    }
    out.report.time_s = std::chrono::duration<double>(clock::now() - t0).count();

    out.placement = std::move(result.placement);
    out.trace = std::move(result.trace);
    out.report.hpwl = oracle_hpwl(instance.netlist, out.placement);
    out.report.overlap = oracle_overlap(instance.netlist, out.placement);

    if (do_legalize) {
        auto [legal_placement, rep] =
            legalize(instance.netlist, instance.region, out.placement, legal_cfg);
        out.report.lhpwl = oracle_hpwl(instance.netlist, legal_placement);
        const double tol = 1e-9 * instance.netlist.total_movable_area();
        out.report.legal = rep.success &&
                           oracle_legal(instance.netlist, instance.region,
                                        legal_placement, tol);
        out.legalized = std::move(legal_placement);
    }
    return out;
}

std::string reports_to_csv(const std::vector<RunReport>& reports) {
    std::string csv = "circuit,method,seed,hpwl,overlap,time_s,lhpwl,legal\n";
    for (const auto& r : reports) {
        csv += r.circuit + "," + r.method + "," + std::to_string(r.seed) + "," +
               fmt(r.hpwl) + "," + fmt(r.overlap) + "," + fmt(r.time_s) + "," +
               (r.lhpwl ? fmt(*r.lhpwl) : std::string("")) + "," +
               (r.legal ? "1" : "0") + "\n";
    }
    return csv;
}

std::vector<RunReport> parse_reports_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "circuit,method,seed,hpwl,overlap,time_s,lhpwl,legal")
        throw std::runtime_error("bad CSV header");
    std::vector<RunReport> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        while (fields.size() < 8) fields.emplace_back();
        RunReport r;
        r.circuit = fields[0];
        r.method = fields[1];
        r.seed = std::stoull(fields[2]);
        r.hpwl = std::stod(fields[3]);
        r.overlap = std::stod(fields[4]);
        r.time_s = std::stod(fields[5]);
        if (!fields[6].empty()) r.lhpwl = std::stod(fields[6]);
        r.legal = fields[7] == "1";
        out.push_back(std::move(r));
    }
    return out;
}

void write_csv_file(const std::vector<RunReport>& reports, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << reports_to_csv(reports);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<RunReport> run_benchmark(const std::vector<CircuitInstance>& circuits,
                                     const SuiteConfig& suite) {
    std::vector<RunReport> all;
    for (const auto& circuit : circuits) {
        for (MethodKind method : suite.methods) {
            std::vector<RunReport> rows;
            for (std::uint64_t seed : suite.seeds) {
                RbsmConfig cfg = suite.base;
                cfg.seed = seed;
                RunReport r = run_single(circuit, method, cfg, suite.legalize).report;
                if (!suite.record_time) r.time_s = 0.0;
                rows.push_back(std::move(r));
            }
            std::sort(rows.begin(), rows.end(),
                      [](const RunReport& a, const RunReport& b) { return a.seed < b.seed; });
            RunReport med = median_row(circuit.name, method_name(method), rows);
            all.insert(all.end(), rows.begin(), rows.end());
            all.push_back(med);
        }
    }
    return all;
}

std::vector<RunReport> run_ablation(const std::vector<CircuitInstance>& circuits,
                                    const SuiteConfig& suite) {
    struct Variant {
        std::string label;
        void (*tweak)(RbsmConfig&);
    };
    static const Variant variants[] = {
        {"original", [](RbsmConfig&) {}},
        {"random-batch", [](RbsmConfig& c) { c.uniform_batch = true; }},
        {"fix-gamma", [](RbsmConfig& c) { c.adaptive_gamma_on = false; }},
        {"no-mean-force", [](RbsmConfig& c) { c.alpha = 0.0; }},
        {"no-perturbation", [](RbsmConfig& c) { c.perturb = false; }},
    };

    std::vector<RunReport> all;
    for (const auto& circuit : circuits) {
        for (const auto& variant : variants) {
            std::vector<RunReport> rows;
            for (std::uint64_t seed : suite.seeds) {
                RbsmConfig cfg = suite.base;
                cfg.seed = seed;
                variant.tweak(cfg);
                RunReport r =
                    run_single(circuit, MethodKind::Rbsm, cfg, suite.legalize).report;
                r.method = variant.label;
                if (!suite.record_time) r.time_s = 0.0;
                rows.push_back(std::move(r));
            }
            std::sort(rows.begin(), rows.end(),
                      [](const RunReport& a, const RunReport& b) { return a.seed < b.seed; });
            RunReport med = median_row(circuit.name, variant.label, rows);
            all.insert(all.end(), rows.begin(), rows.end());
            all.push_back(med);
        }
    }
    return all;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace rlplace
