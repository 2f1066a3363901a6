#include "hyperac/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperac/errors.hpp"

namespace hyperac {

namespace {

// Relative slack on the bound q <= 1.
constexpr double kAdmissibilitySlack = 1e-12;

void finish_params(SchemeParams& params) {
    params.q = params.lambda * params.dt;
    if (params.q > 1.0) params.q = 1.0;
    params.p = 1.0 - params.q;
}

}  // namespace

Grid1D::Grid1D(double a, double b, std::size_t cells) : a_(a), b_(b), cells_(cells), dx_(0.0) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("grid: need finite a < b");
    if (cells < 2) throw ConfigError("grid: need at least 2 cells");
    dx_ = (b - a) / static_cast<double>(cells);
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> x(cells_);
    for (std::size_t j = 0; j < cells_; ++j) x[j] = node(j);
    return x;
}

std::size_t min_admissible_cells(double epsilon, double tau, double length) {
    const double max_dx = 2.0 * std::sqrt(tau) * epsilon;
    auto cells = static_cast<std::size_t>(std::ceil(length / max_dx));
    return std::max<std::size_t>(cells, 2);
}

SchemeParams derive_params(double epsilon, double tau, const Grid1D& grid) {
    if (!(epsilon > 0.0) || !(tau > 0.0)) throw ConfigError("epsilon and tau must be positive");
    SchemeParams params;
    params.epsilon = epsilon;
    params.tau = tau;
    params.lambda = 1.0 / (2.0 * tau);
    params.gamma = epsilon / std::sqrt(tau);
    params.dx = grid.dx();
    params.dt = params.dx / params.gamma;
    if (params.lambda * params.dt > 1.0 + kAdmissibilitySlack) {
        std::ostringstream os;
        os.precision(8);
        os << "inadmissible resolution: requires dx <= 2 sqrt(tau) eps = " << 2.0 * std::sqrt(tau) * epsilon
           << " but dx = " << params.dx << "; use at least " << min_admissible_cells(epsilon, tau, grid.length())
           << " cells";
        throw ConfigError(os.str());
    }
    finish_params(params);
    return params;
}

SchemeParams kinetic_params(double lambda, double gamma, const Grid1D& grid) {
    if (!(lambda >= 0.0) || !(gamma > 0.0)) throw ConfigError("kinetic_params: need lambda >= 0 and gamma > 0");
    SchemeParams params;
    params.lambda = lambda;
    params.gamma = gamma;
    params.dx = grid.dx();
    params.dt = params.dx / gamma;
    if (lambda * params.dt > 1.0 + kAdmissibilitySlack) throw ConfigError("kinetic_params: lambda dt exceeds 1");
    params.tau = lambda > 0.0 ? 1.0 / (2.0 * lambda) : std::numeric_limits<double>::infinity();
    params.epsilon = gamma * std::sqrt(params.tau);
    finish_params(params);
    return params;
}

KineticState::KineticState(Grid1D g, std::vector<double> alpha_in, std::vector<double> beta_in, double time)
    : alpha(std::move(alpha_in)), beta(std::move(beta_in)), t(time), grid(g) {
    if (alpha.size() != grid.cells() || beta.size() != grid.cells())
        throw PreconditionError("kinetic state: alpha and beta must have one sample per cell");
    if (!(t >= 0.0)) throw PreconditionError("kinetic state: time must be nonnegative");
}

std::vector<double> KineticState::u() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < size(); ++j) out[j] = alpha[j] + beta[j];
    return out;
}

std::vector<double> KineticState::v() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < size(); ++j) out[j] = alpha[j] - beta[j];
    return out;
}

namespace {

// I_j = integral_a^{x_j} h: trapezoid between nodes, h held flat on the half cell next to the wall.
std::vector<double> cumulative_integral(const ScalarFn& h, const Grid1D& grid) {
    const std::size_t M = grid.cells();
    const double dx = grid.dx();
    std::vector<double> hx(M);
    for (std::size_t j = 0; j < M; ++j) hx[j] = h(grid.node(j));
    std::vector<double> I(M);
    I[0] = 0.5 * dx * hx[0];
    for (std::size_t j = 1; j < M; ++j) I[j] = I[j - 1] + 0.5 * dx * (hx[j - 1] + hx[j]);
    return I;
}

ScalarFn compatibility_integrand(const InitialData& data, const PotentialSpec& pot) {
    return [&data, &pot](double s) { return pot.f(data.u0(s)) - data.u1(s); };
}

}  // namespace

double check_compatibility(const InitialData& data, const Grid1D& grid, const PotentialSpec& pot) {
    const auto h = compatibility_integrand(data, pot);
    const auto I = cumulative_integral(h, grid);
    const std::size_t last = grid.cells() - 1;
    return I[last] + 0.5 * grid.dx() * h(grid.node(last));
}

KineticState build_initial_state(const InitialData& data, const Grid1D& grid, const SchemeParams& params,
                                 const PotentialSpec& pot) {
    if (std::abs(params.dx - grid.dx()) > 1e-14 * grid.dx())
        throw PreconditionError("build_initial_state: params were derived for a different grid");
    const auto I = cumulative_integral(compatibility_integrand(data, pot), grid);
    const std::size_t M = grid.cells();
    std::vector<double> alpha(M), beta(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double u0 = data.u0(grid.node(j));
        const double flow = I[j] / params.gamma;
        alpha[j] = 0.5 * (u0 + flow);
        beta[j] = 0.5 * (u0 - flow);
    }
    return KineticState(grid, std::move(alpha), std::move(beta), 0.0);
}

void step_in_place(KineticState& state, const SchemeParams& params, const PotentialSpec& pot,
                   StepWorkspace& ws) {
    const std::size_t M = state.size();
    if (M != state.grid.cells()) throw PreconditionError("step: state does not match its grid");
    const double p = params.p;
    const double q = params.q;
    const double dt = params.dt;
    const auto& a = state.alpha;
    const auto& b = state.beta;
    ws.source.resize(M);
    ws.alpha.resize(M);
    ws.beta.resize(M);
    for (std::size_t j = 0; j < M; ++j) ws.source[j] = 0.5 * dt * pot.f(a[j] + b[j]);

    // Reflection at x = a: the incoming right-mover is the outgoing left-mover of cell 0.
    ws.alpha[0] = p * b[0] + q * a[0] + ws.source[0];
    for (std::size_t j = 1; j < M; ++j) ws.alpha[j] = p * a[j - 1] + q * b[j - 1] + ws.source[j - 1];
    for (std::size_t j = 0; j + 1 < M; ++j) ws.beta[j] = p * b[j + 1] + q * a[j + 1] + ws.source[j + 1];
    ws.beta[M - 1] = p * a[M - 1] + q * b[M - 1] + ws.source[M - 1];

    for (std::size_t j = 0; j < M; ++j) {
        if (!std::isfinite(ws.alpha[j]) || !std::isfinite(ws.beta[j])) throw BlowUp(j, state.t + dt);
    }
    state.alpha.swap(ws.alpha);
    state.beta.swap(ws.beta);
    state.t += dt;
}

KineticState step(const KineticState& state, const SchemeParams& params, const PotentialSpec& pot) {
    KineticState next = state;
    StepWorkspace ws;
    step_in_place(next, params, pot, ws);
    return next;
}

std::vector<double> centred_derivative(const std::vector<double>& values, double dx) {
    const std::size_t M = values.size();
    std::vector<double> d(M, 0.0);
    if (M < 2) return d;
    d[0] = (values[1] - values[0]) / dx;
    d[M - 1] = (values[M - 1] - values[M - 2]) / dx;
    for (std::size_t j = 1; j + 1 < M; ++j) d[j] = (values[j + 1] - values[j - 1]) / (2.0 * dx);
    return d;
}

Fields reconstruct(const KineticState& state, const SchemeParams& params, const PotentialSpec& pot) {
    Fields out;
    out.u = state.u();
    out.v = state.v();
    const auto vx = centred_derivative(out.v, state.grid.dx());
    out.u_t.resize(out.u.size());
    for (std::size_t j = 0; j < out.u.size(); ++j) out.u_t[j] = pot.f(out.u[j]) - params.gamma * vx[j];
    return out;
}

std::size_t steps_to_reach(double t0, double horizon, double dt) {
    std::size_t n = 0;
    for (double t = t0; t < horizon; t += dt) ++n;
    return n;
}

KineticState run(KineticState state, const SchemeParams& params, const PotentialSpec& pot, double horizon,
                 std::vector<Observer> observers, std::size_t max_steps) {
    if (!(horizon >= state.t)) throw PreconditionError("run: horizon precedes the current time");
    for (auto& obs : observers) std::sort(obs.times.begin(), obs.times.end());

    std::vector<std::size_t> next_time(observers.size(), 0);
    std::vector<std::size_t> last_fired(observers.size(), std::numeric_limits<std::size_t>::max());
    std::size_t steps = 0;

    auto poll = [&](std::size_t i) {
        auto& obs = observers[i];
        bool fire = obs.every > 0 && steps % obs.every == 0;
        while (next_time[i] < obs.times.size() && obs.times[next_time[i]] <= state.t) {
            ++next_time[i];
            fire = true;
        }
        if (fire && last_fired[i] != steps) {
            last_fired[i] = steps;
            obs.callback(state);
        }
    };

    for (std::size_t i = 0; i < observers.size(); ++i) poll(i);
    StepWorkspace ws;
    while (state.t < horizon && (max_steps == 0 || steps < max_steps)) {
        step_in_place(state, params, pot, ws);
        ++steps;
        for (std::size_t i = 0; i < observers.size(); ++i) poll(i);
    }
    for (std::size_t i = 0; i < observers.size(); ++i) {
        if (observers[i].at_end && last_fired[i] != steps) {
            last_fired[i] = steps;
            observers[i].callback(state);
        }
    }
    return state;
}

}  // namespace hyperac
