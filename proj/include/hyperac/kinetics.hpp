#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hyperac/potential.hpp"

namespace hyperac {

/// Uniform cell-centred grid on [a, b]: x_j = a + (j + 1/2) dx, j = 0..M-1.
class Grid1D {
public:
    Grid1D(double a, double b, std::size_t cells);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t cells() const noexcept { return cells_; }
    double dx() const noexcept { return dx_; }
    double length() const noexcept { return b_ - a_; }

    double node(std::size_t j) const noexcept { return a_ + (static_cast<double>(j) + 0.5) * dx_; }
    std::vector<double> nodes() const;

    bool operator==(const Grid1D&) const = default;

private:
    double a_;
    double b_;
    std::size_t cells_;
    double dx_;
};

/// Kinetic parameters of the Goldstein-Kac scheme.
///
/// lambda = 1/(2 tau) is the reversal rate and gamma = eps/sqrt(tau) the
/// particle speed. The time step is slaved to the grid, dt = dx/gamma, so
/// each density moves exactly one cell per step; p = 1 - lambda dt is the
/// persistence probability and q = lambda dt the reversal probability.
struct SchemeParams {
    double epsilon = 0.0;
    double tau = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
    double dx = 0.0;
    double dt = 0.0;
    double p = 1.0;
    double q = 0.0;
};

/// Builds SchemeParams from (eps, tau) on `grid`. Throws ConfigError when
/// dx > 2 sqrt(tau) eps (q would exceed 1); the message names the minimal
/// admissible cell count.
SchemeParams derive_params(double epsilon, double tau, const Grid1D& grid);

/// Test-only constructor from the kinetic pair (lambda, gamma). lambda = 0
/// gives pure transport with p = 1 (tau and epsilon are then +inf).
SchemeParams kinetic_params(double lambda, double gamma, const Grid1D& grid);

/// Smallest cell count on `grid`'s interval that is admissible for (eps, tau).
std::size_t min_admissible_cells(double epsilon, double tau, double length);

struct InitialData {
    ScalarFn u0;
    ScalarFn u1;
    std::string description;
};

/// Left- and right-moving particle densities at time t. u = alpha + beta is
/// the solution, v = alpha - beta the particle flow.
struct KineticState {
    std::vector<double> alpha;
    std::vector<double> beta;
    double t = 0.0;
    Grid1D grid;

    KineticState(Grid1D g, std::vector<double> alpha_in, std::vector<double> beta_in, double time = 0.0);

    std::size_t size() const noexcept { return alpha.size(); }
    std::vector<double> u() const;
    std::vector<double> v() const;
};

/// Residual of the compatibility condition, integral_a^b [f(u0) - u1] ds,
/// by the trapezoid rule through the walls and the grid nodes.
double check_compatibility(const InitialData& data, const Grid1D& grid, const PotentialSpec& pot);

/// Kinetic initial data: alpha = (u0 + I/gamma)/2, beta = (u0 - I/gamma)/2
/// where I(x_j) is the cumulative trapezoid integral of f(u0) - u1 from a.
KineticState build_initial_state(const InitialData& data, const Grid1D& grid, const SchemeParams& params,
                                 const PotentialSpec& pot);

/// One step of the upwind random-walk scheme with reflecting walls.
/// Throws BlowUp if any produced value is not finite.
KineticState step(const KineticState& state, const SchemeParams& params, const PotentialSpec& pot);

/// Buffers reused across steps by `step_in_place`.
struct StepWorkspace {
    std::vector<double> source;
    std::vector<double> alpha;
    std::vector<double> beta;
};

/// In-place variant used by `run`.
void step_in_place(KineticState& state, const SchemeParams& params, const PotentialSpec& pot,
                   StepWorkspace& workspace);

struct Fields {
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> u_t;
};

/// u = alpha + beta, v = alpha - beta, u_t = f(u) - gamma v_x (centred
/// differences, one-sided in the two boundary cells).
Fields reconstruct(const KineticState& state, const SchemeParams& params, const PotentialSpec& pot);

/// Centred first difference, one-sided at both ends.
std::vector<double> centred_derivative(const std::vector<double>& values, double dx);

/// Read-only callback invoked during `run`.
///
/// The observer fires at t0 if 0 is in `times` or `every` > 0, at the first
/// step reaching each requested time, every `every` steps, and on the final
/// state if `at_end` is set. A given state is reported at most once.
struct Observer {
    std::vector<double> times;
    std::size_t every = 0;
    bool at_end = false;
    std::function<void(const KineticState&)> callback;
};

/// Steps until state.t >= horizon. Deterministic: identical inputs give
/// bit-identical results. `max_steps` (0 = unlimited) bounds the step count.
KineticState run(KineticState state, const SchemeParams& params, const PotentialSpec& pot, double horizon,
                 std::vector<Observer> observers = {}, std::size_t max_steps = 0);

/// Number of steps `run` takes from t0 to horizon.
std::size_t steps_to_reach(double t0, double horizon, double dt);

}  // namespace hyperac
