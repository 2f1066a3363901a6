#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperac/diagnostics.hpp"
#include "hyperac/experiments.hpp"
#include "hyperac/kinetics.hpp"
#include "hyperac/potential.hpp"

using namespace hyperac;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(t0);
    const bool in_time = elapsed < time_limit;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("%s %d %s: %s; %.3f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
                elapsed, time_limit);
    std::fflush(stdout);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

Outcome c0_value() {
    const double c0 = compute_c0(quartic());
    const double exact = 2.0 * std::sqrt(2.0) / 3.0;
    const double err = std::abs(c0 - exact);
    char buf[96];
    std::snprintf(buf, sizeof buf, "c0 = %.10f, error %.2e (tol 1e-08)", c0, err);
    return {err <= 1e-8 && std::abs(c0 - 0.9428090416) <= 1e-8, buf};
}

Outcome energy_identity() {
    auto c = example_config(3);
    c.horizon = 10.0;
    c.snapshot_times = {0.0, 10.0};
    const std::size_t cells = resolve_cells(c);
    c.cells = cells;
    const auto coarse = run_experiment(c);
    c.cells = 2 * cells;
    const auto fine = run_experiment(c);
    const double ratio = coarse.dissipation_residual / fine.dissipation_residual;
    const bool monotone = coarse.max_energy_increase <= 10.0 * coarse.dissipation_residual &&
                          fine.max_energy_increase <= 10.0 * fine.dissipation_residual;
    return {ratio >= 1.5 && monotone,
            "residual " + fmt(coarse.dissipation_residual) + " -> " + fmt(fine.dissipation_residual) + " (ratio " +
                fmt(ratio) + ", need >= 1.5), max energy increase " + fmt(fine.max_energy_increase) + " vs 10x residual " +
                fmt(10.0 * fine.dissipation_residual)};
}

Outcome example_counts() {
    const std::size_t expected[] = {4, 4, 3, 1};
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 4; ++n) {
        auto c = example_config(n);
        if (n == 1) c.snapshot_times = {0.0, 20.0, 1000.0};
        const auto r = run_experiment(c);
        std::string counts;
        for (const auto& s : r.snapshots) {
            if (s.requested_t > 0.0) counts += (counts.empty() ? "" : "/") + std::to_string(s.transitions);
        }
        bool this_ok = r.final_transitions == expected[n - 1] && r.final_snapshot().state.t >= 1000.0;
        if (n == 1) {
            for (const auto& s : r.snapshots) {
                if (s.requested_t >= 20.0) this_ok = this_ok && s.transitions == 4;
            }
        }
        ok = ok && this_ok;
        detail += (n > 1 ? ", " : "") + std::string("ex") + std::to_string(n) + " " +
                  std::to_string(r.initial_transitions) + "->" + std::to_string(r.final_transitions) + " (want " +
                  std::to_string(expected[n - 1]) + ")";
        if (n == 1) detail += " [t=20,1000: " + counts + "]";
    }
    return {ok, detail};
}

Outcome certificate_margins() {
    bool ok = true;
    std::string detail;
    for (double eps : {0.1, 0.05, 0.02}) {
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentConfig c;
        c.epsilon = eps;
        c.profile = "tanh_layer";
        const Grid1D grid(c.a, c.b, resolve_cells(c));
        const auto u0 = profiles::profile("tanh_layer", eps);
        std::vector<double> u(grid.cells());
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = u0(grid.node(j));
        const auto cert = layer_certificate(u, grid, quartic(), StepProfile({0.0}, -1, grid), eps, 1, 0.5);
        const double elapsed = seconds_since(t0);
        const bool this_ok = cert.margin >= -5.0 * eps && elapsed < 1.0;
        ok = ok && this_ok;
        detail += (detail.empty() ? "" : ", ") + std::string("eps ") + fmt(eps) + " margin " + fmt(cert.margin) +
                  " >= " + fmt(-5.0 * eps) + " in " + fmt(elapsed) + " s";
    }
    return {ok, detail};
}

Outcome metastable_sweep() {
    ExperimentConfig base;
    base.profile = "tanh_layer";
    base.velocity = "zero";
    base.delta1 = 0.2;
    const auto rows = sweep_metastability(base, {0.2, 0.1, 0.05}, 1.0, 1.0);
    bool ok = rows.size() == 3;
    std::string detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const bool no_exit = r.exit && !r.exit->exited && r.exit->time == r.horizon && !r.capped;
        ok = ok && no_exit;
        if (i > 0) ok = ok && r.sup_l1 < rows[i - 1].sup_l1;
        detail += (i ? ", " : "") + std::string("eps ") + fmt(r.epsilon) + " sup L1 " + fmt(r.sup_l1) +
                  (no_exit ? " no exit" : " EXIT") + " (max drift " + fmt(r.exit ? r.exit->max_distance : NAN) + ")" + " by T=" + fmt(r.horizon);
    }
    return {ok, detail};
}

// Per-cell transcription of the kinetic update.
void oracle_step(std::vector<double>& a, std::vector<double>& b, const SchemeParams& prm, const PotentialSpec& pot) {
    const std::size_t M = a.size();
    std::vector<double> na(M), nb(M);
    for (std::size_t j = 0; j < M; ++j) {
        if (j == 0) {
            na[j] = prm.p * b[0] + prm.q * a[0] + 0.5 * prm.dt * pot.f(a[0] + b[0]);
        } else {
            na[j] = prm.p * a[j - 1] + prm.q * b[j - 1] + 0.5 * prm.dt * pot.f(a[j - 1] + b[j - 1]);
        }
        if (j == M - 1) {
            nb[j] = prm.p * a[j] + prm.q * b[j] + 0.5 * prm.dt * pot.f(a[j] + b[j]);
        } else {
            nb[j] = prm.p * b[j + 1] + prm.q * a[j + 1] + 0.5 * prm.dt * pot.f(a[j + 1] + b[j + 1]);
        }
    }
    a.swap(na);
    b.swap(nb);
}

double particle_sum(const KineticState& st) {
    double acc = 0.0;
    for (std::size_t j = 0; j < st.size(); ++j) acc += st.alpha[j] + st.beta[j];
    return acc;
}

// Largest |sum(t_n) - sum(0)| over 1e4 reaction-free steps, and the l1 mass of the start state.
std::pair<double, double> conservation_drift(KineticState s, const SchemeParams& prm) {
    double mass = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) mass += std::abs(s.alpha[j]) + std::abs(s.beta[j]);
    const double s0 = particle_sum(s);
    StepWorkspace ws;
    double drift = 0.0;
    for (int n = 0; n < 10000; ++n) {
        step_in_place(s, prm, null_potential(), ws);
        drift = std::max(drift, std::abs(particle_sum(s) - s0));
    }
    return {drift, mass};
}

Outcome scheme_oracle() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto random_vec = [&](std::size_t n) {
        std::vector<double> v(n);
        for (auto& x : v) x = dist(rng);
        return v;
    };

    const Grid1D small(0, 1, 16);
    double drift16 = 0.0;
    bool exact = true;
    StepWorkspace ws;
    for (int trial = 0; trial < 20; ++trial) {
        const auto p16 = trial % 2 ? derive_params(0.05, 0.5, small) : kinetic_params(0.5 + 0.7 * trial, 1.0, small);
        drift16 = std::max(drift16, conservation_drift(KineticState(small, random_vec(16), random_vec(16)), p16).first);

        const auto& pot = trial % 3 == 0 ? null_potential() : quartic();
        auto oa = random_vec(16);
        auto ob = random_vec(16);
        KineticState st(small, oa, ob);
        for (int n = 0; n < 100; ++n) {
            step_in_place(st, p16, pot, ws);
            oracle_step(oa, ob, p16, pot);
        }
        exact = exact && std::memcmp(st.alpha.data(), oa.data(), 16 * sizeof(double)) == 0 &&
                std::memcmp(st.beta.data(), ob.data(), 16 * sizeof(double)) == 0;
    }

    const Grid1D big(-4, 4, 256);
    const auto [drift256, mass256] =
        conservation_drift(KineticState(big, random_vec(256), random_vec(256)), derive_params(0.1, 0.8, big));
    const double rel256 = drift256 / mass256;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "16-cell sum drift %.2e over 1e4 steps (tol 1e-12), 256-cell drift %.2e = %.2e of the l1 mass "
                  "(tol 1e-12), oracle %s on 20 random 16-cell states x 100 steps",
                  drift16, drift256, rel256, exact ? "bit-exact" : "MISMATCH");
    return {drift16 <= 1e-12 && rel256 <= 1e-12 && exact, buf};
}

Outcome round_trip() {
    bool ok = true;
    std::string detail;
    for (int n : {2, 3}) {
        const auto c = example_config(n);
        const InitialData data{profiles::profile(c.profile, c.epsilon, c.center), profiles::velocity(c.velocity), c.name};
        auto err = [&](std::size_t cells) {
            const Grid1D g(c.a, c.b, cells);
            const auto prm = derive_params(c.epsilon, c.tau, g);
            const auto f = reconstruct(build_initial_state(data, g, prm, quartic()), prm, quartic());
            double e = 0.0;
            for (std::size_t j = 0; j < cells; ++j) e = std::max(e, std::abs(f.u_t[j] - data.u1(g.node(j))));
            return e;
        };
        const std::size_t cells = resolve_cells(c);
        const double e1 = err(cells);
        const double e2 = err(2 * cells);
        const double slope = std::log(e1 / e2) / std::log(2.0);
        ok = ok && slope >= 0.8;
        detail += (n == 2 ? "" : ", ") + std::string("ex") + std::to_string(n) + " max error " + fmt(e1) + " -> " +
                  fmt(e2) + " slope " + fmt(slope) + " (need >= 0.8)";
    }
    return {ok, detail};
}

}  // namespace

int main() {
    criterion(1, "c0 of the quartic well", 1.0, c0_value);
    criterion(2, "energy identity under refinement (example 3, T=10)", 30.0, energy_identity);
    criterion(3, "example transition counts", 600.0, example_counts);
    criterion(4, "layer certificate lower bound", 3.0, certificate_margins);
    criterion(5, "metastable persistence sweep", 300.0, metastable_sweep);
    criterion(6, "scheme oracle equivalence", 60.0, scheme_oracle);
    criterion(7, "initial data round trip", 60.0, round_trip);
    std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
