#include "hyperac/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "hyperac/errors.hpp"

namespace hyperac {

namespace profiles {

ScalarFn profile(const std::string& name, double epsilon, double center) {
    const double width = std::numbers::sqrt2 * epsilon;
    if (name == "cosine_small") return [](double x) { return std::cos(std::numbers::pi * x / 2.0) / 10.0; };
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "one") return [](double) { return 1.0; };
    if (name == "tanh_layer") return [width, center](double x) { return std::tanh((x - center) / width); };
    if (name == "glued_two_layer") {
        return [width](double x) {
            return x <= 0.0 ? std::tanh((x + 2.0) / width) : -std::tanh((x - 2.0) / width);
        };
    }
    throw ConfigError("unknown profile '" + name + "'");
}

ScalarFn velocity(const std::string& name) {
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "cosine") return [](double x) { return std::cos(std::numbers::pi * x / 2.0); };
    if (name == "minus_x") return [](double x) { return -x; };
    throw ConfigError("unknown velocity '" + name + "'");
}

std::vector<std::string> profile_names() { return {"cosine_small", "zero", "one", "tanh_layer", "glued_two_layer"}; }

std::vector<std::string> velocity_names() { return {"zero", "cosine", "minus_x"}; }

std::optional<StepProfile> limit_profile(const std::string& name, double center, const Grid1D& grid) {
    auto inside = [&](std::vector<double> jumps) {
        std::erase_if(jumps, [&](double x) { return !(grid.a() < x && x < grid.b()); });
        return jumps;
    };
    if (name == "tanh_layer") {
        auto jumps = inside({center});
        const int start = jumps.empty() ? (center <= grid.a() ? 1 : -1) : -1;
        return StepProfile(std::move(jumps), start, grid);
    }
    if (name == "glued_two_layer") {
        auto jumps = inside({-2.0, 2.0});
        const int start = (grid.a() < -2.0 || grid.b() <= 0.0) ? -1 : 1;
        return StepProfile(std::move(jumps), start, grid);
    }
    if (name == "one") return StepProfile({}, 1, grid);
    if (name == "cosine_small") {
        std::vector<double> jumps;
        for (long k = static_cast<long>(std::floor(grid.a())) - 1; k <= static_cast<long>(std::ceil(grid.b())); ++k) {
            if (k % 2 != 0 && grid.a() < k && k < grid.b()) jumps.push_back(static_cast<double>(k));
        }
        const double probe = jumps.empty() ? 0.5 * (grid.a() + grid.b()) : 0.5 * (grid.a() + jumps.front());
        const int start = std::cos(std::numbers::pi * probe / 2.0) >= 0.0 ? 1 : -1;
        return StepProfile(std::move(jumps), start, grid);
    }
    return std::nullopt;
}

}  // namespace profiles

namespace {

constexpr double kDefaultCellsPerEpsilon = 5.0;
constexpr double kLadder[] = {0.0, 1.0, 10.0, 100.0, 1000.0};

template <class T>
bool contains(const std::vector<T>& v, const T& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::size_t resolve_cells(const ExperimentConfig& config) {
    if (config.cells > 0) return config.cells;
    const double target = config.epsilon / kDefaultCellsPerEpsilon;
    auto cells = static_cast<std::size_t>(std::ceil((config.b - config.a) / target - 1e-9));
    return std::max(cells, min_admissible_cells(config.epsilon, config.tau, config.b - config.a));
}

std::vector<double> resolve_snapshot_times(const ExperimentConfig& config) {
    std::vector<double> times = config.snapshot_times;
    if (times.empty()) {
        for (double t : kLadder) {
            if (t <= config.horizon) times.push_back(t);
        }
        times.push_back(config.horizon);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

void validate(const ExperimentConfig& config) {
    auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
    if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) fail("epsilon must be positive");
    if (!(config.tau > 0.0) || !std::isfinite(config.tau)) fail("tau must be positive");
    if (!(config.a < config.b)) fail("domain needs a < b");
    if (!(config.horizon >= 0.0) || !std::isfinite(config.horizon)) fail("horizon must be finite and >= 0");
    if (!(-1.0 < config.K_lo && config.K_lo <= config.K_hi && config.K_hi < 1.0)) fail("K needs -1 < K_lo <= K_hi < 1");
    if (!(config.hysteresis > 0.0 && config.hysteresis < 1.0)) fail("hysteresis must lie in (0, 1)");
    if (!(config.delta1 > 0.0)) fail("delta1 must be positive");
    if (config.diagnostics_every == 0) fail("diagnostics_every must be >= 1");
    if (config.max_steps == 0) fail("max_steps must be >= 1");
    if (!config.seedless) fail("seedless must be true (the scheme is deterministic)");
    for (double t : config.snapshot_times) {
        if (!(t >= 0.0 && t <= config.horizon)) fail("snapshot times must lie in [0, horizon]");
    }
    if (!contains(profiles::profile_names(), config.profile)) fail("unknown profile '" + config.profile + "'");
    if (!contains(profiles::velocity_names(), config.velocity)) fail("unknown velocity '" + config.velocity + "'");
    const auto pot = potential_by_name(config.potential);
    DampingSpec::relaxation(config.tau, pot);
    derive_params(config.epsilon, config.tau, Grid1D(config.a, config.b, resolve_cells(config)));
}

ExperimentConfig example_config(int n) {
    ExperimentConfig c;
    c.name = "example" + std::to_string(n);
    c.horizon = 1000.0;
    switch (n) {
        case 1:
            c.epsilon = 0.01;
            c.tau = 0.8;
            c.profile = "cosine_small";
            c.velocity = "zero";
            // u0 lies inside K everywhere; interfaces are tracked once the layers have formed.
            c.reference_time = 20.0;
            break;
        case 2:
            c.epsilon = 0.1;
            c.tau = 0.8;
            c.profile = "zero";
            c.velocity = "cosine";
            c.reference_time = 20.0;
            break;
        case 3:
            c.epsilon = 0.2;
            c.tau = 0.6;
            c.profile = "tanh_layer";
            c.velocity = "minus_x";
            break;
        case 4:
            c.epsilon = 0.01;
            c.tau = 0.9;
            c.profile = "glued_two_layer";
            c.velocity = "minus_x";
            break;
        default:
            throw ConfigError("example number must be 1, 2, 3 or 4");
    }
    return c;
}

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides) {
    if (overrides.epsilon) config.epsilon = *overrides.epsilon;
    if (overrides.tau) config.tau = *overrides.tau;
    if (overrides.horizon) {
        config.horizon = *overrides.horizon;
        std::erase_if(config.snapshot_times, [&](double t) { return t > config.horizon; });
    }
    if (overrides.cells) config.cells = *overrides.cells;
}

RunReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    const auto pot = potential_by_name(config.potential);
    const Grid1D grid(config.a, config.b, resolve_cells(config));
    const auto params = derive_params(config.epsilon, config.tau, grid);
    const auto damping = DampingSpec::relaxation(config.tau, pot);
    const InitialData data{profiles::profile(config.profile, config.epsilon, config.center),
                           profiles::velocity(config.velocity), config.profile + " / " + config.velocity};

    RunReport report{.config = config, .cells = grid.cells(), .params = params};
    report.compatibility_residual = check_compatibility(data, grid, pot);
    if (std::abs(report.compatibility_residual) > kCompatibilityTolerance) {
        std::ostringstream os;
        os << "initial data violate the compatibility condition: residual " << report.compatibility_residual;
        report.warnings.push_back(os.str());
    }

    const auto initial = build_initial_state(data, grid, params, pot);
    report.initial_energy = energy(initial, params, pot);
    const auto u0 = initial.u();
    report.initial_transitions = transition_count(u0, grid, config.hysteresis);
    const auto limit = profiles::limit_profile(config.profile, config.center, grid).value_or(
        profile_from_samples(u0, grid));
    report.initial_l1 = l1_distance_to_profile(u0, grid, limit);
    report.sup_l1 = report.initial_l1;

    const auto times = resolve_snapshot_times(config);
    const std::size_t needed = steps_to_reach(0.0, config.horizon, params.dt);
    report.capped = needed > config.max_steps;
    const std::size_t total_steps = std::min(needed, config.max_steps);
    if (report.capped) report.warnings.push_back("horizon exceeds max_steps; run cut and flagged as capped");

    DissipationAccumulator acc(params, pot, damping);
    ExitTimeTracker tracker(config.K_lo, config.K_hi, config.delta1, config.reference_time);
    std::size_t next_snapshot = 0;
    std::size_t step_index = 0;

    Observer every_step;
    every_step.every = 1;
    every_step.callback = [&](const KineticState& s) {
        const auto fields = reconstruct(s, params, pot);
        acc.add(s.t, fields.u, fields.u_t, grid);
        tracker.add(s.t, fields.u, grid);
        report.sup_l1 = std::max(report.sup_l1, l1_distance_to_profile(fields.u, grid, limit));

        bool snapshot = false;
        while (next_snapshot < times.size() && times[next_snapshot] <= s.t) {
            report.snapshots.push_back({times[next_snapshot], transition_count(fields.u, grid, config.hysteresis), s});
            ++next_snapshot;
            snapshot = true;
        }
        const bool last = step_index == total_steps;
        if (last && !snapshot) {
            report.snapshots.push_back({s.t, transition_count(fields.u, grid, config.hysteresis), s});
        }
        if (snapshot || last || step_index % config.diagnostics_every == 0) {
            DiagnosticsRow row;
            row.energy = energy_from_fields(fields.u, fields.u_t, grid, params.epsilon, params.tau, pot, s.t);
            row.transitions = transition_count(fields.u, grid, config.hysteresis);
            row.interfaces = interface_set(fields.u, grid, config.K_lo, config.K_hi).intervals;
            row.expenditure = acc.expenditure();
            report.diagnostics.push_back(std::move(row));
        }
        ++step_index;
    };

    const auto final_state = run(initial, params, pot, config.horizon, {every_step}, config.max_steps);
    report.steps = step_index - 1;
    report.final_transitions = transition_count(final_state.u(), grid, config.hysteresis);
    report.expenditure = acc.expenditure();
    report.energy_drop = acc.initial_energy() - acc.latest_energy();
    report.dissipation_residual = acc.residual();
    report.max_energy_increase = acc.samples() > 1 ? acc.max_energy_increase() : 0.0;
    if (tracker.has_reference()) {
        try {
            report.exit = tracker.result(config.horizon);
        } catch (const ConfigError& e) {
            report.warnings.emplace_back(e.what());
        }
    }
    return report;
}

RunReport run_example(int n, const ConfigOverrides& overrides) {
    auto config = example_config(n);
    apply_overrides(config, overrides);
    return run_experiment(config);
}

std::vector<SweepRow> sweep_metastability(const ExperimentConfig& base, const std::vector<double>& epsilons, double k,
                                          double m) {
    if (epsilons.empty()) throw ConfigError("sweep: no epsilon values given");
    if (!(m > 0.0) || !(k >= 0.0)) throw ConfigError("sweep: need m > 0 and k >= 0");

    std::vector<ExperimentConfig> configs;
    for (double eps : epsilons) {
        ExperimentConfig c = base;
        c.epsilon = eps;
        c.cells = 0;
        c.k_exponent = k;
        c.m = m;
        c.horizon = m * std::pow(eps, -k);
        c.snapshot_times = {0.0, c.horizon};
        c.reference_time = 0.0;
        c.diagnostics_every = std::max<std::size_t>(base.diagnostics_every, 1);
        validate(c);
        configs.push_back(std::move(c));
    }

    std::vector<std::future<SweepRow>> jobs;
    for (const auto& c : configs) {
        jobs.push_back(std::async(std::launch::async, [c] {
            const auto r = run_experiment(c);
            SweepRow row;
            row.epsilon = c.epsilon;
            row.cells = r.cells;
            row.dt = r.params.dt;
            row.horizon = c.horizon;
            row.capped = r.capped;
            row.initial_l1 = r.initial_l1;
            row.sup_l1 = r.sup_l1;
            row.exit = r.exit;
            row.initial_transitions = r.initial_transitions;
            row.final_transitions = r.final_transitions;
            return row;
        }));
    }
    std::vector<SweepRow> rows;
    for (auto& job : jobs) rows.push_back(job.get());
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& l, const SweepRow& r) { return l.epsilon > r.epsilon; });
    return rows;
}

EnergyBudgetReport energy_budget_report(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.diagnostics_every = 1;
    const auto r = run_experiment(c);
    EnergyBudgetReport out;
    out.transitions = r.initial_transitions;
    out.c0 = compute_c0(potential_by_name(c.potential));
    out.initial_energy = r.initial_energy.total_scaled;
    out.budget = out.initial_energy - static_cast<double>(out.transitions) * out.c0;
    out.residual = r.dissipation_residual;
    out.samples.reserve(r.diagnostics.size());
    for (const auto& row : r.diagnostics) out.samples.push_back({row.energy.t, row.expenditure, row.energy.total_scaled});
    return out;
}

}  // namespace hyperac
