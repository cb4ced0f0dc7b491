#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>

#include "rlplace/bookshelf.hpp"
#include "rlplace/config.hpp"
#include "rlplace/metrics.hpp"
#include "rlplace/report.hpp"
#include "rlplace/standin.hpp"
#include "rlplace/svg.hpp"

namespace fs = std::filesystem;
using namespace rlplace;

namespace {

Region parse_region(const std::string& spec) {
    auto x = spec.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--region", "expected WxH, e.g. 800x800");
    return {std::stod(spec.substr(0, x)), std::stod(spec.substr(x + 1))};
}

struct BundleOpts {
    std::string blocks, nets, pl;
    std::string circuit;
    std::string gsrc_dir;

    void attach(CLI::App* app) {
        app->add_option("--blocks", blocks, "GSRC .blocks file");
        app->add_option("--nets", nets, "GSRC .nets file");
        app->add_option("--pl", pl, "GSRC .pl file");
        app->add_option("--circuit", circuit,
                        "circuit name (n10..n300); with --gsrc-dir loads the real "
                        "bundle, otherwise a deterministic synthetic stand-in");
        app->add_option("--gsrc-dir", gsrc_dir,
                        "directory holding <circuit>.blocks/.nets/.pl bundles");
    }

    BenchmarkBundle bundle_for(const std::string& name) const {
        fs::path dir(gsrc_dir);
        BenchmarkBundle b;
        b.circuit_name = name;
        b.blocks_path = (dir / (name + ".blocks")).string();
        b.nets_path = (dir / (name + ".nets")).string();
        b.pl_path = (dir / (name + ".pl")).string();
        std::string missing;
        for (const std::string& p : {b.blocks_path, b.nets_path, b.pl_path})
            if (!fs::exists(p)) missing += "\n  " + p;
        if (!missing.empty())
            throw std::runtime_error("missing benchmark files for " + name +
                                     "; expected:" + missing);
        return b;
    }

    CircuitInstance load(const Region& region) const {
        if (!blocks.empty() || !nets.empty() || !pl.empty()) {
            if (blocks.empty() || nets.empty() || pl.empty())
                throw std::runtime_error("--blocks, --nets and --pl must be given together");
            BenchmarkBundle b{blocks, nets, pl,
                              circuit.empty() ? fs::path(blocks).stem().string() : circuit};
            std::string missing;
            for (const std::string& p : {b.blocks_path, b.nets_path, b.pl_path})
                if (!fs::exists(p)) missing += "\n  " + p;
            if (!missing.empty())
                throw std::runtime_error("missing benchmark files; expected:" + missing);
            auto [netlist, reg] = parse_bundle(b, region);
            CircuitInstance inst{b.circuit_name, std::move(netlist), reg, std::nullopt};
            try {
                inst.reference = parse_block_placement(inst.netlist, b.pl_path);
            } catch (const std::exception&) {
                // .pl without block coordinates: no reference floorplan
            }
            return inst;
        }
        if (circuit.empty())
            throw std::runtime_error("give --circuit or --blocks/--nets/--pl");
        if (!gsrc_dir.empty()) {
            BenchmarkBundle b = bundle_for(circuit);
            auto [netlist, reg] = parse_bundle(b, region);
            CircuitInstance inst{circuit, std::move(netlist), reg, std::nullopt};
            try {
                inst.reference = parse_block_placement(inst.netlist, b.pl_path);
            } catch (const std::exception&) {
            }
            return inst;
        }
        for (const auto& shape : standard_shapes())
            if (shape.name == circuit) return make_standin(shape, 12345, region);
        throw std::runtime_error("unknown circuit " + circuit +
                                 " (synthetic circuits: n10 n30 n50 n100 n200 n300)");
    }
};

struct OptimizerOpts {
    std::string config_file;
    std::uint64_t seed = 1;
    bool uniform_batch = false, fix_gamma = false, no_mean_force = false,
         no_perturb = false;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "key=value config file");
        app->add_option("--seed", seed, "rng seed");
        app->add_flag("--uniform-batch", uniform_batch,
                      "ablation: uniform instead of degree-weighted sampling");
        app->add_flag("--fix-gamma", fix_gamma, "ablation: fixed gamma, no adaptation");
        app->add_flag("--no-mean-force", no_mean_force, "ablation: disable mean-field force");
        app->add_flag("--no-perturb", no_perturb, "ablation: disable gradient perturbation");
    }

    RbsmConfig build() const {
        RbsmConfig cfg;
        if (!config_file.empty()) cfg = load_config(config_file, cfg);
        cfg.seed = seed;
        if (uniform_batch) cfg.uniform_batch = true;
        if (fix_gamma) cfg.adaptive_gamma_on = false;
        if (no_mean_force) cfg.alpha = 0.0;
        if (no_perturb) cfg.perturb = false;
        return cfg;
    }
};

int cmd_run(const BundleOpts& bundle, const OptimizerOpts& opt,
            const std::string& method, const std::string& region_spec,
            const std::string& out_csv, const std::string& out_svg,
            const std::string& out_pl, bool no_legalize) {
    CircuitInstance inst = bundle.load(parse_region(region_spec));
    RunOutput out = run_single(inst, parse_method(method), opt.build(), !no_legalize);

    std::cout << "circuit=" << out.report.circuit << " method=" << out.report.method
              << " seed=" << out.report.seed << " hpwl=" << out.report.hpwl
              << " overlap=" << out.report.overlap << " time_s=" << out.report.time_s;
    if (out.report.lhpwl)
        std::cout << " lhpwl=" << *out.report.lhpwl
                  << " legal=" << (out.report.legal ? "yes" : "no");
    std::cout << "\n";

    const Placement& final_p =
        out.legalized ? *out.legalized : out.placement;
    if (!out_csv.empty()) write_csv_file({out.report}, out_csv);
    if (!out_svg.empty()) render_svg_file(inst.netlist, inst.region, final_p, out_svg);
    if (!out_pl.empty()) write_placement(inst.netlist, final_p, out_pl);
    return (!no_legalize && !out.report.legal) ? 1 : 0;
}

int cmd_bench(const BundleOpts& bundle, const OptimizerOpts& opt,
              std::vector<std::string> circuits, std::vector<std::string> methods,
              int num_seeds, const std::string& region_spec,
              const std::string& out_csv, bool ablation, bool no_time) {
    const Region region = parse_region(region_spec);
    if (circuits.empty())
        for (const auto& s : standard_shapes()) circuits.push_back(s.name);

    std::vector<CircuitInstance> instances;
    for (const auto& name : circuits) {
        BundleOpts one = bundle;
        one.circuit = name;
        instances.push_back(one.load(region));
    }

    SuiteConfig suite;
    suite.base = opt.build();
    suite.methods.clear();
    if (methods.empty()) methods = {"rbsm", "gd", "adam"};
    for (const auto& m : methods) suite.methods.push_back(parse_method(m));
    suite.seeds.clear();
    for (int s = 1; s <= num_seeds; ++s) suite.seeds.push_back(s);
    suite.record_time = !no_time;

    std::vector<RunReport> reports = ablation ? run_ablation(instances, suite)
                                              : run_benchmark(instances, suite);
    std::cout << reports_to_csv(reports);
    if (!out_csv.empty()) write_csv_file(reports, out_csv);

    for (const auto& r : reports)
        if (suite.legalize && !r.legal) return 1;
    return 0;
}

int cmd_legalize(const BundleOpts& bundle, const std::string& region_spec,
                 const std::string& in_pl, const std::string& out_pl) {
    CircuitInstance inst = bundle.load(parse_region(region_spec));
    Placement p = parse_block_placement(inst.netlist, in_pl);
    auto [legal_p, rep] = legalize(inst.netlist, inst.region, std::move(p));
    write_placement(inst.netlist, legal_p, out_pl);
    std::cout << "hpwl=" << rep.hpwl << " overlap=" << rep.overlap_area
              << " sweeps=" << rep.sweeps << " success=" << (rep.success ? "yes" : "no")
              << "\n";
    return rep.success ? 0 : 1;
}

int cmd_render(const BundleOpts& bundle, const std::string& region_spec,
               const std::string& in_pl, const std::string& out_svg) {
    CircuitInstance inst = bundle.load(parse_region(region_spec));
    Placement p;
    if (!in_pl.empty()) {
        p = parse_block_placement(inst.netlist, in_pl);
    } else if (inst.reference) {
        p = *inst.reference;
    } else {
        throw std::runtime_error("no placement: give --in-pl or a bundle whose .pl "
                                 "places the blocks");
    }
    render_svg_file(inst.netlist, inst.region, p, out_svg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rectified-linear penalty placement solver"};
    app.require_subcommand(1);

    std::string region_spec = "800x800";
    app.add_option("--region", region_spec, "die size WxH")->capture_default_str();

    auto* run = app.add_subcommand("run", "optimize one circuit with one method");
    BundleOpts run_bundle;
    OptimizerOpts run_opt;
    run_bundle.attach(run);
    run_opt.attach(run);
    std::string method = "rbsm", out_csv, out_svg, out_pl;
    bool no_legalize = false;
    run->add_option("--method", method, "rbsm | gd | adam")->capture_default_str();
    run->add_option("--out-csv", out_csv, "write the run report as CSV");
    run->add_option("--out-svg", out_svg, "render the final placement");
    run->add_option("--out-pl", out_pl, "write the final placement (.pl)");
    run->add_flag("--no-legalize", no_legalize, "skip the legalization pass");

    auto* bench = app.add_subcommand("bench", "run a circuit x method x seed suite");
    BundleOpts bench_bundle;
    OptimizerOpts bench_opt;
    bench_bundle.attach(bench);
    bench_opt.attach(bench);
    std::vector<std::string> circuits, methods;
    int num_seeds = 5;
    std::string bench_csv;
    bool ablation = false;
    bench->add_option("--circuits", circuits, "circuit names (default: n10..n300)");
    bench->add_option("--methods", methods, "methods to run (default: rbsm gd adam)");
    bench->add_option("--seeds", num_seeds, "number of seeds")->capture_default_str();
    bench->add_option("--out-csv", bench_csv, "CSV output path");
    bench->add_flag("--ablation", ablation,
                    "sweep the enhancement toggles instead of the method matrix");
    bool bench_no_time = false;
    bench->add_flag("--no-time", bench_no_time,
                    "write time_s as 0 for byte-reproducible CSV output");

    auto* leg = app.add_subcommand("legalize", "legalize a placement file");
    BundleOpts leg_bundle;
    leg_bundle.attach(leg);
    std::string leg_in, leg_out;
    leg->add_option("--in-pl", leg_in, "input placement (.pl)")->required();
    leg->add_option("--out-pl", leg_out, "output placement (.pl)")->required();

    auto* render = app.add_subcommand("render", "render a placement as SVG");
    BundleOpts render_bundle;
    render_bundle.attach(render);
    std::string render_in, render_svg_path;
    render->add_option("--in-pl", render_in, "placement to draw (.pl)");
    render->add_option("--out-svg", render_svg_path, "SVG output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(run_bundle, run_opt, method, region_spec, out_csv, out_svg,
                           out_pl, no_legalize);
        if (bench->parsed())
            return cmd_bench(bench_bundle, bench_opt, circuits, methods, num_seeds,
                             region_spec, bench_csv, ablation, bench_no_time);
        if (leg->parsed())
            return cmd_legalize(leg_bundle, region_spec, leg_in, leg_out);
        if (render->parsed())
            return cmd_render(render_bundle, region_spec, render_in, render_svg_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
