#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hyperac/errors.hpp"
#include "hyperac/io.hpp"
#include "hyperac/verify.hpp"

namespace hyperac::io {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string out;
    std::optional<std::size_t> cells;
    std::optional<double> horizon;
    std::optional<double> epsilon;
    std::optional<double> tau;
    bool quiet = false;
};

fs::path output_root(const Options& opt) {
    if (!opt.out.empty()) return opt.out;
    if (const char* env = std::getenv("HYPERAC_OUT"); env && *env) return env;
    return "runs";
}

ConfigOverrides overrides_from(const Options& opt) {
    return ConfigOverrides{.epsilon = opt.epsilon, .tau = opt.tau, .horizon = opt.horizon, .cells = opt.cells};
}

void summarize(const RunReport& r, const fs::path& dir) {
    std::cout << r.config.name << ": " << r.cells << " cells, " << r.steps << " steps to t = "
              << format_double(r.final_snapshot().state.t) << "\n"
              << "  transitions " << r.initial_transitions << " -> " << r.final_transitions << "\n"
              << "  energy " << format_double(r.initial_energy.total_scaled) << " -> "
              << format_double(r.initial_energy.total_scaled - r.energy_drop) << ", identity residual "
              << format_double(r.dissipation_residual) << "\n";
    if (r.exit) {
        std::cout << "  exit time " << format_double(r.exit->time) << (r.exit->exited ? " (exited)" : " (horizon)")
                  << "\n";
    }
    for (const auto& w : r.warnings) std::cout << "  warning: " << w << "\n";
    std::cout << "  output " << dir.string() << "\n";
}

int do_run(const ExperimentConfig& config, const Options& opt) {
    const auto started = utc_timestamp();
    const auto report = run_experiment(config);
    const auto dir = write_run(output_root(opt), report, started);
    if (!opt.quiet) summarize(report, dir);
    return 0;
}

int do_sweep(ExperimentConfig base, const std::vector<double>& epsilons, std::optional<double> k,
             std::optional<double> m, const Options& opt) {
    const auto started = utc_timestamp();
    apply_overrides(base, overrides_from(opt));
    if (k) base.k_exponent = *k;
    if (m) base.m = *m;
    if (epsilons.empty()) throw ConfigError("sweep: --epsilons needs at least one value");
    const auto rows = sweep_metastability(base, epsilons, base.k_exponent, base.m);

    auto key = config_to_json(base);
    key["sweep_epsilons"] = epsilons;
    RunManifest manifest;
    manifest.config_hash = config_hash(key.dump());
    manifest.started = started;
    const fs::path dir = output_root(opt) / manifest.config_hash;
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "config.json", std::ios::trunc);
        out << key.dump(2) << '\n';
        manifest.outputs.push_back("config.json");
    }
    {
        std::ofstream out(dir / "sweep.csv", std::ios::trunc);
        out << "epsilon,cells,dt,horizon,capped,initial_l1,sup_l1,exited,exit_time,max_distance,"
               "initial_transitions,final_transitions\n";
        for (const auto& r : rows) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out << format_double(r.epsilon) << ',' << r.cells << ',' << format_double(r.dt) << ','
                << format_double(r.horizon) << ',' << (r.capped ? 1 : 0) << ',' << format_double(r.initial_l1) << ','
                << format_double(r.sup_l1) << ',' << (r.exit && r.exit->exited ? 1 : 0) << ','
                << format_double(r.exit ? r.exit->time : nan) << ','
                << format_double(r.exit ? r.exit->max_distance : nan) << ',' << r.initial_transitions << ','
                << r.final_transitions << '\n';
        }
        manifest.outputs.push_back("sweep.csv");
    }
    manifest.finished = utc_timestamp();
    write_manifest(dir / "manifest.json", manifest);
    if (!opt.quiet) {
        for (const auto& r : rows) {
            std::cout << "eps " << format_double(r.epsilon) << ": sup L1 " << format_double(r.sup_l1) << ", exit "
                      << (r.exit ? format_double(r.exit->time) : std::string("undefined"))
                      << (r.exit && r.exit->exited ? " (exited)" : "") << "\n";
        }
        std::cout << "output " << dir.string() << "\n";
    }
    return 0;
}

int do_verify(const Options& opt) {
    const auto started = utc_timestamp();
    const auto checks = run_verification();
    const fs::path dir = output_root(opt) / "verify";
    fs::create_directories(dir);
    bool all = true;
    {
        std::ofstream out(dir / "verify.csv", std::ios::trunc);
        out << "check,value,threshold,passed\n";
        for (const auto& c : checks) {
            out << c.name << ',' << format_double(c.value) << ',' << format_double(c.threshold) << ','
                << (c.passed ? 1 : 0) << '\n';
            all = all && c.passed;
        }
    }
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    }
    RunManifest manifest;
    manifest.config_hash = config_hash(std::string("{\"verify\":true}"));
    manifest.started = started;
    manifest.finished = utc_timestamp();
    manifest.outputs = {"verify.csv"};
    manifest.exit_status = all ? 0 : 1;
    write_manifest(dir / "manifest.json", manifest);
    if (!opt.quiet) std::cout << "output " << dir.string() << "\n";
    return all ? 0 : 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"hyperac: hyperbolic Allen-Cahn metastability experiments"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--out", opt.out, "output root (default $HYPERAC_OUT or ./runs)");
    app.add_option("--cells", opt.cells, "override the cell count");
    app.add_option("--horizon", opt.horizon, "override the final time");
    app.add_option("--epsilon", opt.epsilon, "override epsilon");
    app.add_option("--tau", opt.tau, "override tau");
    app.add_flag("--quiet", opt.quiet, "suppress the summary");

    int example_n = 0;
    auto* example = app.add_subcommand("example", "run preset example 1-4");
    example->add_option("n", example_n)->required();
    example->fallthrough();

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    run_cmd->add_option("config", config_path)->required();
    run_cmd->fallthrough();

    std::string sweep_path;
    std::vector<double> epsilons;
    std::optional<double> k, m;
    auto* sweep = app.add_subcommand("sweep", "metastability sweep over epsilon");
    sweep->add_option("config", sweep_path)->required();
    sweep->add_option("--epsilons", epsilons)->required()->delimiter(',');
    sweep->add_option("--k", k, "horizon exponent");
    sweep->add_option("--m", m, "horizon prefactor");
    sweep->fallthrough();

    auto* verify = app.add_subcommand("verify", "run the built-in checks");
    verify->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 64;
    }

    try {
        if (*example) {
            auto config = example_config(example_n);
            apply_overrides(config, overrides_from(opt));
            return do_run(config, opt);
        }
        if (*run_cmd) {
            auto config = load_config(config_path);
            apply_overrides(config, overrides_from(opt));
            return do_run(config, opt);
        }
        if (*sweep) return do_sweep(load_config(sweep_path), epsilons, k, m, opt);
        if (*verify) return do_verify(opt);
    } catch (const BlowUp& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 64;
}

}  // namespace hyperac::io
