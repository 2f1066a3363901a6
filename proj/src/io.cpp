#include "hyperac/io.hpp"

#include <cerrno>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "hyperac/errors.hpp"

namespace hyperac::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

json config_to_json(const ExperimentConfig& c) {
    return json{{"name", c.name},
                {"potential", c.potential},
                {"epsilon", c.epsilon},
                {"tau", c.tau},
                {"domain", {c.a, c.b}},
                {"cells", c.cells},
                {"profile", c.profile},
                {"velocity", c.velocity},
                {"center", c.center},
                {"horizon", c.horizon},
                {"snapshot_times", c.snapshot_times},
                {"K", {c.K_lo, c.K_hi}},
                {"delta1", c.delta1},
                {"reference_time", c.reference_time},
                {"hysteresis", c.hysteresis},
                {"k_exponent", c.k_exponent},
                {"m", c.m},
                {"diagnostics_every", c.diagnostics_every},
                {"max_steps", c.max_steps},
                {"seedless", c.seedless}};
}

namespace {

template <class T>
T get_as(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: field '" + key + "' has the wrong type");
    }
}

std::pair<double, double> get_pair(const json& j, const std::string& key) {
    const auto v = get_as<std::vector<double>>(j, key);
    if (v.size() != 2) throw ConfigError("config: field '" + key + "' must be a two-element array");
    return {v[0], v[1]};
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    ExperimentConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "name") c.name = get_as<std::string>(value, key);
        else if (key == "potential") c.potential = get_as<std::string>(value, key);
        else if (key == "epsilon") c.epsilon = get_as<double>(value, key);
        else if (key == "tau") c.tau = get_as<double>(value, key);
        else if (key == "domain") std::tie(c.a, c.b) = get_pair(value, key);
        else if (key == "cells") c.cells = get_as<std::size_t>(value, key);
        else if (key == "profile") c.profile = get_as<std::string>(value, key);
        else if (key == "velocity") c.velocity = get_as<std::string>(value, key);
        else if (key == "center") c.center = get_as<double>(value, key);
        else if (key == "horizon") c.horizon = get_as<double>(value, key);
        else if (key == "snapshot_times") c.snapshot_times = get_as<std::vector<double>>(value, key);
        else if (key == "K") std::tie(c.K_lo, c.K_hi) = get_pair(value, key);
        else if (key == "delta1") c.delta1 = get_as<double>(value, key);
        else if (key == "reference_time") c.reference_time = get_as<double>(value, key);
        else if (key == "hysteresis") c.hysteresis = get_as<double>(value, key);
        else if (key == "k_exponent") c.k_exponent = get_as<double>(value, key);
        else if (key == "m") c.m = get_as<double>(value, key);
        else if (key == "diagnostics_every") c.diagnostics_every = get_as<std::size_t>(value, key);
        else if (key == "max_steps") c.max_steps = get_as<std::size_t>(value, key);
        else if (key == "seedless") c.seedless = get_as<bool>(value, key);
        else throw ConfigError("config: unknown field '" + key + "'");
    }
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

std::string canonicalize(const std::string& json_text) {
    try {
        return json::parse(json_text).dump();
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("not valid JSON: ") + e.what());
    }
}

std::string config_hash(const std::string& json_text) {
    const std::string canonical = canonicalize(json_text);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string config_hash(const ExperimentConfig& config) { return config_hash(config_to_json(config).dump()); }

namespace {

std::ofstream open_for_write(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(line);
    while (std::getline(is, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

void write_snapshot_csv(const fs::path& path, const KineticState& state, const SchemeParams& params,
                        const PotentialSpec& pot) {
    const auto fields = reconstruct(state, params, pot);
    auto out = open_for_write(path);
    out << "x,alpha,beta,u,v,u_t\n";
    for (std::size_t j = 0; j < state.size(); ++j) {
        out << format_double(state.grid.node(j)) << ',' << format_double(state.alpha[j]) << ','
            << format_double(state.beta[j]) << ',' << format_double(fields.u[j]) << ',' << format_double(fields.v[j])
            << ',' << format_double(fields.u_t[j]) << '\n';
    }
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("CSV file not found: " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("CSV file is empty: " + path.string());
    table.header = split(line, ',');
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) {
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str()) throw ConfigError("CSV " + path.string() + ": cannot parse '" + cell + "'");
            row.push_back(v);
        }
        if (row.size() != table.header.size())
            throw ConfigError("CSV " + path.string() + ": row width does not match the header");
        table.rows.push_back(std::move(row));
    }
    return table;
}

KineticState read_snapshot_csv(const fs::path& path, const Grid1D& grid, double t) {
    const auto table = read_csv(path);
    if (table.header.size() < 3 || table.header[1] != "alpha" || table.header[2] != "beta")
        throw ConfigError("snapshot " + path.string() + ": unexpected header");
    if (table.rows.size() != grid.cells())
        throw ConfigError("snapshot " + path.string() + ": row count does not match the grid");
    std::vector<double> alpha, beta;
    for (const auto& row : table.rows) {
        alpha.push_back(row[1]);
        beta.push_back(row[2]);
    }
    return KineticState(grid, std::move(alpha), std::move(beta), t);
}

void write_diagnostics_csv(const fs::path& path, const std::vector<DiagnosticsRow>& rows) {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.interfaces.size());
    auto out = open_for_write(path);
    out << "t,E_scaled,kinetic,gradient,potential,n_transitions";
    for (std::size_t i = 1; i <= width; ++i) out << ",interface_lo_" << i << ",interface_hi_" << i;
    out << '\n';
    for (const auto& r : rows) {
        out << format_double(r.energy.t) << ',' << format_double(r.energy.total_scaled) << ','
            << format_double(r.energy.kinetic) << ',' << format_double(r.energy.gradient) << ','
            << format_double(r.energy.potential) << ',' << r.transitions;
        for (std::size_t i = 0; i < width; ++i) {
            if (i < r.interfaces.size()) {
                out << ',' << format_double(r.interfaces[i].lo) << ',' << format_double(r.interfaces[i].hi);
            } else {
                out << ",nan,nan";
            }
        }
        out << '\n';
    }
}

void write_manifest(const fs::path& path, const RunManifest& m) {
    const json j{{"config_hash", m.config_hash}, {"tool_version", m.tool_version}, {"started", m.started},
                 {"finished", m.finished},       {"outputs", m.outputs},           {"exit_status", m.exit_status}};
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json energy_json(const EnergyReport& e) {
    return json{{"t", e.t},
                {"kinetic", e.kinetic},
                {"gradient", e.gradient},
                {"potential", e.potential},
                {"total_scaled", e.total_scaled},
                {"total_unscaled", e.total_unscaled}};
}

std::string snapshot_name(std::size_t index, double requested_t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_%02zu_t%g.csv", index, requested_t);
    return buf;
}

}  // namespace

json report_to_json(const RunReport& r) {
    json snapshots = json::array();
    for (const auto& s : r.snapshots)
        snapshots.push_back({{"requested_t", s.requested_t}, {"t", s.state.t}, {"transitions", s.transitions}});
    json exit = nullptr;
    if (r.exit) {
        exit = {{"exited", r.exit->exited},
                {"time", r.exit->time},
                {"max_distance", number_or_null(r.exit->max_distance)},
                {"reference_time", r.config.reference_time}};
    }
    return json{{"config", config_to_json(r.config)},
                {"grid", {{"cells", r.cells}, {"dx", r.params.dx}}},
                {"params",
                 {{"lambda", r.params.lambda},
                  {"gamma", r.params.gamma},
                  {"dt", r.params.dt},
                  {"p", r.params.p},
                  {"q", r.params.q}}},
                {"steps", r.steps},
                {"capped", r.capped},
                {"compatibility_residual", r.compatibility_residual},
                {"warnings", r.warnings},
                {"initial_energy", energy_json(r.initial_energy)},
                {"initial_transitions", r.initial_transitions},
                {"snapshots", snapshots},
                {"final_transitions", r.final_transitions},
                {"dissipation",
                 {{"expenditure", r.expenditure},
                  {"energy_drop", r.energy_drop},
                  {"residual", r.dissipation_residual},
                  {"max_energy_increase", r.max_energy_increase}}},
                {"exit", exit},
                {"initial_l1", r.initial_l1},
                {"sup_l1", r.sup_l1}};
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

fs::path write_run(const fs::path& out_root, const RunReport& report, const std::string& started) {
    RunManifest manifest;
    manifest.config_hash = config_hash(report.config);
    manifest.started = started;
    const fs::path dir = out_root / manifest.config_hash;
    fs::create_directories(dir);

    const auto pot = potential_by_name(report.config.potential);
    {
        auto out = open_for_write(dir / "config.json");
        out << config_to_json(report.config).dump(2) << '\n';
        manifest.outputs.push_back("config.json");
    }
    {
        auto out = open_for_write(dir / "report.json");
        out << report_to_json(report).dump(2) << '\n';
        manifest.outputs.push_back("report.json");
    }
    write_diagnostics_csv(dir / "diagnostics.csv", report.diagnostics);
    manifest.outputs.push_back("diagnostics.csv");
    for (std::size_t i = 0; i < report.snapshots.size(); ++i) {
        const auto name = snapshot_name(i, report.snapshots[i].requested_t);
        write_snapshot_csv(dir / name, report.snapshots[i].state, report.params, pot);
        manifest.outputs.push_back(name);
    }
    manifest.finished = utc_timestamp();
    write_manifest(dir / "manifest.json", manifest);
    return dir;
}

}  // namespace hyperac::io
