#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperac/experiments.hpp"

namespace hyperac::io {

inline constexpr const char* kToolVersion = "0.3.1";

/// Shortest-safe text for a double: 17 significant digits, "nan" for NaN.
std::string format_double(double value);

nlohmann::json config_to_json(const ExperimentConfig& config);
/// Missing keys keep their defaults; unknown keys and wrong types raise ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
/// Throws ConfigError when the file is missing or not valid JSON.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical form of a JSON document: sorted keys, no insignificant whitespace.
std::string canonicalize(const std::string& json_text);
/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string config_hash(const std::string& json_text);
std::string config_hash(const ExperimentConfig& config);

/// Header: x,alpha,beta,u,v,u_t.
void write_snapshot_csv(const std::filesystem::path& path, const KineticState& state, const SchemeParams& params,
                        const PotentialSpec& pot);
/// Rebuilds the kinetic state (alpha, beta) from a snapshot file.
KineticState read_snapshot_csv(const std::filesystem::path& path, const Grid1D& grid, double t = 0.0);

/// Header: t,E_scaled,kinetic,gradient,potential,n_transitions,interface_lo_1,interface_hi_1,...
/// padded with nan up to the widest row.
void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

struct RunManifest {
    std::string config_hash;
    std::string tool_version = kToolVersion;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    int exit_status = 0;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

/// Deterministic summary of a run (no wall-clock fields).
nlohmann::json report_to_json(const RunReport& report);

/// Writes config.json, report.json, diagnostics.csv, one snapshot CSV per
/// snapshot time and manifest.json into `<out_root>/<config hash>/`.
/// Returns the run directory.
std::filesystem::path write_run(const std::filesystem::path& out_root, const RunReport& report,
                                const std::string& started);

std::string utc_timestamp();

/// Command-line entry point. Exit codes: 0 success, 1 configuration error,
/// 2 numerical blow-up, 64 usage error.
int cli_main(int argc, char** argv);

}  // namespace hyperac::io
