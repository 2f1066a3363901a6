#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "hyperac/kinetics.hpp"
#include "hyperac/potential.hpp"

namespace hyperac {

/// Scaled energy
///   E_eps = integral [ tau/(2 eps) u_t^2 + eps/2 u_x^2 + F(u)/eps ] dx
/// split by term, plus the unscaled energy eps * E_eps.
struct EnergyReport {
    double t = 0.0;
    double kinetic = 0.0;
    double gradient = 0.0;
    double potential = 0.0;
    double total_scaled = 0.0;
    double total_unscaled = 0.0;
};

EnergyReport energy(const KineticState& state, const SchemeParams& params, const PotentialSpec& pot);

/// Same functional evaluated from sampled u and u_t.
EnergyReport energy_from_fields(const std::vector<double>& u, const std::vector<double>& u_t, const Grid1D& grid,
                                double epsilon, double tau, const PotentialSpec& pot, double t = 0.0);

/// Time-difference estimate (u(t+dt) - u(t))/dt, for cross-checking the
/// flux-based u_t returned by `reconstruct`.
std::vector<double> time_difference_ut(const KineticState& before, const KineticState& after);

/// eps^-1 * integral g(u) u_t^2 dx at one time level.
double dissipation_rate(const std::vector<double>& u, const std::vector<double>& u_t, const Grid1D& grid,
                        double epsilon, const DampingSpec& damping);

struct TrajectorySample {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> u_t;
};

/// States sampled during a run, in time order. `horizon` is the requested
/// end time of the run.
struct Trajectory {
    Grid1D grid;
    double horizon = 0.0;
    std::vector<TrajectorySample> samples;
};

/// Observer that appends (t, u, u_t) to `out` every step.
Observer record_every_step(Trajectory& out, const SchemeParams& params, const PotentialSpec& pot);

/// Streaming form of the discrete energy identity. Feed it every step of a
/// run; it accumulates the left-endpoint sum of eps^-1 dt integral g u_t^2
/// and tracks E_eps at the first and latest sample.
class DissipationAccumulator {
public:
    DissipationAccumulator(const SchemeParams& params, const PotentialSpec& pot, DampingSpec damping);

    void add(double t, const std::vector<double>& u, const std::vector<double>& u_t, const Grid1D& grid);
    void add(const KineticState& state);

    /// eps^-1 sum_n dt_n integral g(u^n) (u_t^n)^2, n over all but the last sample.
    double expenditure() const noexcept { return expenditure_; }
    /// Same sum with g replaced by its lower bound sigma.
    double sigma_expenditure() const noexcept { return sigma_expenditure_; }
    double initial_energy() const noexcept { return e_first_; }
    double latest_energy() const noexcept { return e_last_; }
    /// Largest increase E(t_{n+1}) - E(t_n) seen (<= 0 for a monotone run).
    double max_energy_increase() const noexcept { return max_increase_; }
    /// |expenditure - (E(0) - E(T))|.
    double residual() const noexcept;
    std::size_t samples() const noexcept { return count_; }
    const std::vector<double>& energies() const noexcept { return energies_; }

private:
    SchemeParams params_;
    PotentialSpec pot_;
    DampingSpec damping_;
    std::size_t count_ = 0;
    double last_t_ = 0.0;
    double last_rate_ = 0.0;
    double last_sigma_rate_ = 0.0;
    double e_first_ = 0.0;
    double e_last_ = 0.0;
    double max_increase_ = -std::numeric_limits<double>::infinity();
    double expenditure_ = 0.0;
    double sigma_expenditure_ = 0.0;
    std::vector<double> energies_;
};

/// Discrete defect of the energy identity over a recorded trajectory.
double dissipation_residual(const Trajectory& trajectory, const SchemeParams& params, const PotentialSpec& pot,
                            const DampingSpec& damping);

/// Closed interval [lo, hi]; a point is represented with lo == hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Interval&) const = default;
};

using IntervalSet = std::vector<Interval>;

/// I_K[u] for K = [K_lo, K_hi], computed on the piecewise-linear
/// interpolant of the samples (extended flat to the walls).
struct InterfaceReport {
    double K_lo = 0.0;
    double K_hi = 0.0;
    IntervalSet intervals;
    std::size_t count = 0;
    /// Brackets (x_i, y_i) of the components that connect the two sides of K.
    std::vector<std::pair<double, double>> layer_points;
};

inline constexpr double kDefaultKLo = -0.7;
inline constexpr double kDefaultKHi = 0.7;
inline constexpr double kDefaultHysteresis = 0.5;

InterfaceReport interface_set(const std::vector<double>& u, const Grid1D& grid, double K_lo = kDefaultKLo,
                              double K_hi = kDefaultKHi);

/// Hausdorff distance between finite unions of closed intervals, exact.
/// Returns nullopt when either set is empty (distance undefined).
std::optional<double> hausdorff(const IntervalSet& A, const IntervalSet& B);

/// Left-to-right hysteresis automaton: counts passages between
/// u <= -hysteresis and u >= +hysteresis.
std::size_t transition_count(const std::vector<double>& u, const Grid1D& grid, double hysteresis = kDefaultHysteresis);

/// Piecewise-constant +/-1 function with jumps at `jumps`; equal to
/// `start_sign` on (a, jumps[0]).
class StepProfile {
public:
    StepProfile(std::vector<double> jumps, int start_sign, const Grid1D& grid);

    const std::vector<double>& jumps() const noexcept { return jumps_; }
    int start_sign() const noexcept { return start_sign_; }
    std::size_t N() const noexcept { return jumps_.size(); }
    /// Sign on the side of x; a point exactly on a jump takes the right-hand value.
    double value(double x) const;
    /// Sign on (jumps[i-1], jumps[i]), i.e. just left of jump i.
    int sign_left_of(std::size_t i) const;

private:
    std::vector<double> jumps_;
    int start_sign_;
};

/// Profile with a jump at every sign change of the samples.
StepProfile profile_from_samples(const std::vector<double>& u, const Grid1D& grid);

double l1_distance_to_profile(const std::vector<double>& u, const Grid1D& grid, const StepProfile& profile);

struct LayerCertificate {
    std::size_t jump_index = 0;
    double jump = 0.0;
    double x = 0.0;
    double y = 0.0;
    double F_x = 0.0;
    double F_y = 0.0;
    /// integral_x^y [eps/2 u_x^2 + F(u)/eps] dx.
    double energy = 0.0;
};

struct Certificate {
    std::vector<LayerCertificate> layers;
    double c0 = 0.0;
    double total_energy = 0.0;
    /// total_energy - N c0.
    double margin = 0.0;
};

/// Numerical form of the energy lower bound near each jump of `profile`.
///
/// For every jump gamma_i a point x on the left and y on the right are
/// chosen by minimising F(u) over samples of the correct sign, first in
/// windows of width 2 delta next to the jump, then l-1 further windows
/// moving outward. The layer energy on [x, y] is then compared with c0.
///
/// Throws PreconditionError if the 2 l delta neighbourhoods of the jumps
/// overlap or reach the walls, and CertificateFailure if a window contains
/// no sample of the expected sign.
Certificate layer_certificate(const std::vector<double>& u, const Grid1D& grid, const PotentialSpec& pot,
                              const StepProfile& profile, double epsilon, int l, double delta);

struct ExitTime {
    bool exited = false;
    /// First sampled time with d(I_K[u(t)], I_K[u(ref)]) > delta1, or the
    /// horizon when that never happens.
    double time = 0.0;
    /// Largest distance seen over the samples.
    double max_distance = 0.0;
};

/// Streaming exit-time detection. Samples before `reference_time` are
/// ignored; the first sample at or after it defines the reference interface.
class ExitTimeTracker {
public:
    ExitTimeTracker(double K_lo, double K_hi, double delta1, double reference_time = 0.0);

    void add(double t, const std::vector<double>& u, const Grid1D& grid);
    /// Throws ConfigError if the reference interface was empty.
    ExitTime result(double horizon) const;
    bool has_reference() const noexcept { return reference_.has_value(); }

private:
    double K_lo_;
    double K_hi_;
    double delta1_;
    double reference_time_;
    std::optional<IntervalSet> reference_;
    bool reference_empty_ = false;
    bool exited_ = false;
    double exit_t_ = 0.0;
    double max_distance_ = 0.0;
};

ExitTime exit_time(const Trajectory& trajectory, double K_lo, double K_hi, double delta1,
                   double reference_time = 0.0);

}  // namespace hyperac
