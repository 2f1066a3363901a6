#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperac/diagnostics.hpp"
#include "hyperac/kinetics.hpp"
#include "hyperac/potential.hpp"

namespace hyperac {

/// Named initial profiles u0 and velocities u1.
///
/// Profiles: "cosine_small" cos(pi x/2)/10, "zero", "one", "tanh_layer"
/// tanh((x - center)/(sqrt(2) eps)), "glued_two_layer" (two tanh branches
/// with jumps near -2 and +2, glued at x = 0).
/// Velocities: "zero", "cosine" cos(pi x/2), "minus_x" -x.
namespace profiles {

ScalarFn profile(const std::string& name, double epsilon, double center = 0.0);
ScalarFn velocity(const std::string& name);
std::vector<std::string> profile_names();
std::vector<std::string> velocity_names();

/// Step function the named profile approximates as eps -> 0, if it has one.
std::optional<StepProfile> limit_profile(const std::string& name, double center, const Grid1D& grid);

}  // namespace profiles

struct ExperimentConfig {
    std::string name = "custom";
    std::string potential = "quartic";
    double epsilon = 0.1;
    double tau = 0.8;
    double a = -4.0;
    double b = 4.0;
    /// 0 selects the default rule dx ~ eps/5, raised to the admissible minimum.
    std::size_t cells = 0;
    std::string profile = "tanh_layer";
    std::string velocity = "zero";
    double center = 0.0;
    double horizon = 1000.0;
    /// Empty selects the ladder {0, 1, 10, 100, 1000, horizon} cut at horizon.
    std::vector<double> snapshot_times;
    double K_lo = kDefaultKLo;
    double K_hi = kDefaultKHi;
    double delta1 = 0.2;
    /// Exit times are measured against the interface at this time.
    double reference_time = 0.0;
    double hysteresis = kDefaultHysteresis;
    double k_exponent = 1.0;
    double m = 1.0;
    /// Diagnostics row cadence in steps (rows are also written at every snapshot).
    std::size_t diagnostics_every = 10;
    /// Hard cap on the number of steps; longer horizons are cut and flagged.
    std::size_t max_steps = 1'000'000;
    /// The scheme has no random component.
    bool seedless = true;
};

/// Cell count chosen for `config` (explicit value or the default rule).
std::size_t resolve_cells(const ExperimentConfig& config);

/// Snapshot times in use (explicit or default ladder), sorted and within [0, horizon].
std::vector<double> resolve_snapshot_times(const ExperimentConfig& config);

/// Throws ConfigError on any inconsistency (admissibility, K, names, times).
void validate(const ExperimentConfig& config);

/// Preset matching example n in {1, 2, 3, 4}.
ExperimentConfig example_config(int n);

struct ConfigOverrides {
    std::optional<double> epsilon;
    std::optional<double> tau;
    std::optional<double> horizon;
    std::optional<std::size_t> cells;
};

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides);

struct DiagnosticsRow {
    EnergyReport energy;
    std::size_t transitions = 0;
    IntervalSet interfaces;
    /// Cumulative eps^-1 sum dt integral g(u) u_t^2 up to this row.
    double expenditure = 0.0;
};

struct Snapshot {
    double requested_t = 0.0;
    std::size_t transitions = 0;
    KineticState state;
};

struct RunReport {
    ExperimentConfig config;
    std::size_t cells = 0;
    SchemeParams params;
    std::size_t steps = 0;
    bool capped = false;
    double compatibility_residual = 0.0;
    std::vector<std::string> warnings;
    EnergyReport initial_energy;
    std::size_t initial_transitions = 0;
    std::vector<Snapshot> snapshots;
    std::vector<DiagnosticsRow> diagnostics;
    std::size_t final_transitions = 0;
    /// eps^-1 sum dt integral g(u) u_t^2 over the run.
    double expenditure = 0.0;
    double energy_drop = 0.0;
    double dissipation_residual = 0.0;
    double max_energy_increase = 0.0;
    /// Absent when the reference interface is empty or never sampled.
    std::optional<ExitTime> exit;
    /// Distance to the limit step profile at t = 0 and its sup over every step.
    double initial_l1 = 0.0;
    double sup_l1 = 0.0;

    const Snapshot& final_snapshot() const { return snapshots.back(); }
};

inline constexpr double kCompatibilityTolerance = 1e-8;

RunReport run_experiment(const ExperimentConfig& config);
RunReport run_example(int n, const ConfigOverrides& overrides = {});

struct SweepRow {
    double epsilon = 0.0;
    std::size_t cells = 0;
    double dt = 0.0;
    double horizon = 0.0;
    bool capped = false;
    double initial_l1 = 0.0;
    double sup_l1 = 0.0;
    std::optional<ExitTime> exit;
    std::size_t initial_transitions = 0;
    std::size_t final_transitions = 0;
};

/// For each eps runs `base` to horizon min(m eps^-k, cap) and records the
/// sup over every step of the L1 distance to the limit step profile and the
/// exit time at base.delta1. Rows run in parallel and come back sorted by
/// eps descending.
std::vector<SweepRow> sweep_metastability(const ExperimentConfig& base, const std::vector<double>& epsilons,
                                          double k, double m);

struct BudgetSample {
    double t = 0.0;
    double expenditure = 0.0;
    double energy = 0.0;
};

struct EnergyBudgetReport {
    std::size_t transitions = 0;
    double c0 = 0.0;
    double initial_energy = 0.0;
    /// E_eps(0) - N c0.
    double budget = 0.0;
    double residual = 0.0;
    std::vector<BudgetSample> samples;
};

EnergyBudgetReport energy_budget_report(const ExperimentConfig& config);

}  // namespace hyperac
