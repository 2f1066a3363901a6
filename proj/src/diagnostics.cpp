#include "hyperac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperac/errors.hpp"
#include "hyperac/quadrature.hpp"

namespace hyperac {

EnergyReport energy_from_fields(const std::vector<double>& u, const std::vector<double>& u_t, const Grid1D& grid,
                                double epsilon, double tau, const PotentialSpec& pot, double t) {
    const std::size_t M = u.size();
    if (M != grid.cells() || u_t.size() != M) throw PreconditionError("energy: field sizes do not match the grid");
    const double dx = grid.dx();
    const auto ux = centred_derivative(u, dx);
    double kinetic = 0.0;
    double gradient = 0.0;
    double potential = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        kinetic += u_t[j] * u_t[j];
        gradient += ux[j] * ux[j];
        potential += pot.F(u[j]);
    }
    EnergyReport r;
    r.t = t;
    r.kinetic = tau / (2.0 * epsilon) * kinetic * dx;
    r.gradient = epsilon / 2.0 * gradient * dx;
    r.potential = potential / epsilon * dx;
    r.total_scaled = r.kinetic + r.gradient + r.potential;
    r.total_unscaled = epsilon * r.total_scaled;
    return r;
}

EnergyReport energy(const KineticState& state, const SchemeParams& params, const PotentialSpec& pot) {
    const auto fields = reconstruct(state, params, pot);
    return energy_from_fields(fields.u, fields.u_t, state.grid, params.epsilon, params.tau, pot, state.t);
}

std::vector<double> time_difference_ut(const KineticState& before, const KineticState& after) {
    if (before.size() != after.size()) throw PreconditionError("time_difference_ut: shape mismatch");
    const double dt = after.t - before.t;
    if (!(dt > 0.0)) throw PreconditionError("time_difference_ut: states must be in time order");
    std::vector<double> out(before.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = ((after.alpha[j] + after.beta[j]) - (before.alpha[j] + before.beta[j])) / dt;
    return out;
}

double dissipation_rate(const std::vector<double>& u, const std::vector<double>& u_t, const Grid1D& grid,
                        double epsilon, const DampingSpec& damping) {
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) sum += damping.g(u[j]) * u_t[j] * u_t[j];
    return sum * grid.dx() / epsilon;
}

Observer record_every_step(Trajectory& out, const SchemeParams& params, const PotentialSpec& pot) {
    Observer obs;
    obs.every = 1;
    obs.callback = [&out, params, pot](const KineticState& s) {
        auto fields = reconstruct(s, params, pot);
        out.samples.push_back({s.t, std::move(fields.u), std::move(fields.u_t)});
    };
    return obs;
}

DissipationAccumulator::DissipationAccumulator(const SchemeParams& params, const PotentialSpec& pot,
                                               DampingSpec damping)
    : params_(params), pot_(pot), damping_(std::move(damping)) {}

void DissipationAccumulator::add(double t, const std::vector<double>& u, const std::vector<double>& u_t,
                                 const Grid1D& grid) {
    const double e = energy_from_fields(u, u_t, grid, params_.epsilon, params_.tau, pot_, t).total_scaled;
    const double rate = dissipation_rate(u, u_t, grid, params_.epsilon, damping_);
    double ut2 = 0.0;
    for (double v : u_t) ut2 += v * v;
    const double sigma_rate = damping_.sigma() * ut2 * grid.dx() / params_.epsilon;
    if (count_ == 0) {
        e_first_ = e;
    } else {
        const double dt = t - last_t_;
        expenditure_ += dt * last_rate_;
        sigma_expenditure_ += dt * last_sigma_rate_;
        max_increase_ = std::max(max_increase_, e - e_last_);
    }
    e_last_ = e;
    last_t_ = t;
    last_rate_ = rate;
    last_sigma_rate_ = sigma_rate;
    energies_.push_back(e);
    ++count_;
}

void DissipationAccumulator::add(const KineticState& state) {
    const auto fields = reconstruct(state, params_, pot_);
    add(state.t, fields.u, fields.u_t, state.grid);
}

double DissipationAccumulator::residual() const noexcept {
    if (count_ == 0) return 0.0;
    return std::abs(expenditure_ - (e_first_ - e_last_));
}

double dissipation_residual(const Trajectory& trajectory, const SchemeParams& params, const PotentialSpec& pot,
                            const DampingSpec& damping) {
    DissipationAccumulator acc(params, pot, damping);
    for (const auto& s : trajectory.samples) acc.add(s.t, s.u, s.u_t, trajectory.grid);
    return acc.residual();
}

namespace {

// Piecewise-linear interpolant of cell samples, extended flat to the walls.
struct Polyline {
    std::vector<double> x;
    std::vector<double> y;
};

Polyline extend_to_walls(const std::vector<double>& u, const Grid1D& grid) {
    const std::size_t M = u.size();
    Polyline line;
    line.x.reserve(M + 2);
    line.y.reserve(M + 2);
    line.x.push_back(grid.a());
    line.y.push_back(u.front());
    for (std::size_t j = 0; j < M; ++j) {
        line.x.push_back(grid.node(j));
        line.y.push_back(u[j]);
    }
    line.x.push_back(grid.b());
    line.y.push_back(u.back());
    return line;
}

double point_at(double xl, double xr, double s) {
    if (s <= 0.0) return xl;
    if (s >= 1.0) return xr;
    return xl + s * (xr - xl);
}

}  // namespace

InterfaceReport interface_set(const std::vector<double>& u, const Grid1D& grid, double K_lo, double K_hi) {
    if (!(-1.0 < K_lo && K_lo <= K_hi && K_hi < 1.0)) throw PreconditionError("interface_set: need -1 < K_lo <= K_hi < 1");
    if (u.size() != grid.cells()) throw PreconditionError("interface_set: sample count does not match the grid");

    InterfaceReport report;
    report.K_lo = K_lo;
    report.K_hi = K_hi;
    const auto line = extend_to_walls(u, grid);

    auto push = [&](double lo, double hi) {
        auto& out = report.intervals;
        if (!out.empty() && lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, hi);
        } else {
            out.push_back({lo, hi});
        }
    };

    for (std::size_t k = 0; k + 1 < line.x.size(); ++k) {
        const double yl = line.y[k];
        const double yr = line.y[k + 1];
        const double xl = line.x[k];
        const double xr = line.x[k + 1];
        if (yl == yr) {
            if (K_lo <= yl && yl <= K_hi) push(xl, xr);
            continue;
        }
        double s0 = (K_lo - yl) / (yr - yl);
        double s1 = (K_hi - yl) / (yr - yl);
        if (s0 > s1) std::swap(s0, s1);
        // End parameters come from exact node membership; pieces meeting at a node merge.
        if (K_lo <= yl && yl <= K_hi) s0 = 0.0;
        if (K_lo <= yr && yr <= K_hi) s1 = 1.0;
        s0 = std::max(s0, 0.0);
        s1 = std::min(s1, 1.0);
        if (s0 > s1) continue;
        push(point_at(xl, xr, s0), point_at(xl, xr, s1));
    }

    for (const auto& iv : report.intervals) {
        // Nearest polyline vertices strictly outside the component lie outside K.
        auto right = std::upper_bound(line.x.begin(), line.x.end(), iv.hi);
        auto left = std::lower_bound(line.x.begin(), line.x.end(), iv.lo);
        if (left == line.x.begin() || right == line.x.end()) continue;
        const double before = line.y[static_cast<std::size_t>(left - line.x.begin()) - 1];
        const double after = line.y[static_cast<std::size_t>(right - line.x.begin())];
        if ((before < K_lo && after > K_hi) || (before > K_hi && after < K_lo)) {
            ++report.count;
            report.layer_points.emplace_back(iv.lo, iv.hi);
        }
    }
    return report;
}

namespace {

IntervalSet normalized(IntervalSet s) {
    for (auto& iv : s) {
        if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
    }
    std::sort(s.begin(), s.end(), [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
    IntervalSet out;
    for (const auto& iv : s) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

double distance_to(double x, const IntervalSet& set) {
    auto it = std::upper_bound(set.begin(), set.end(), x, [](double v, const Interval& iv) { return v < iv.lo; });
    double best = std::numeric_limits<double>::infinity();
    if (it != set.end()) best = it->lo - x;
    if (it != set.begin()) {
        const auto& prev = *(it - 1);
        best = std::min(best, x <= prev.hi ? 0.0 : x - prev.hi);
    }
    return best;
}

// sup over A of the distance to B. On each interval of A the distance to B is
// piecewise linear, so its maximum sits at an endpoint or a gap midpoint of B.
double directed(const IntervalSet& A, const IntervalSet& B) {
    double worst = 0.0;
    for (const auto& iv : A) {
        worst = std::max({worst, distance_to(iv.lo, B), distance_to(iv.hi, B)});
        for (std::size_t i = 0; i + 1 < B.size(); ++i) {
            const double mid = 0.5 * (B[i].hi + B[i + 1].lo);
            if (iv.lo < mid && mid < iv.hi) worst = std::max(worst, distance_to(mid, B));
        }
    }
    return worst;
}

}  // namespace

std::optional<double> hausdorff(const IntervalSet& A, const IntervalSet& B) {
    if (A.empty() || B.empty()) return std::nullopt;
    const auto a = normalized(A);
    const auto b = normalized(B);
    return std::max(directed(a, b), directed(b, a));
}

std::size_t transition_count(const std::vector<double>& u, const Grid1D& grid, double hysteresis) {
    if (!(hysteresis > 0.0 && hysteresis < 1.0)) throw PreconditionError("transition_count: need 0 < hysteresis < 1");
    if (u.size() != grid.cells()) throw PreconditionError("transition_count: sample count does not match the grid");
    int state = 0;
    std::size_t count = 0;
    for (double v : u) {
        if (v <= -hysteresis) {
            if (state == 1) ++count;
            state = -1;
        } else if (v >= hysteresis) {
            if (state == -1) ++count;
            state = 1;
        }
    }
    return count;
}

StepProfile::StepProfile(std::vector<double> jumps, int start_sign, const Grid1D& grid)
    : jumps_(std::move(jumps)), start_sign_(start_sign) {
    if (start_sign != 1 && start_sign != -1) throw PreconditionError("step profile: start_sign must be +1 or -1");
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        if (!(grid.a() < jumps_[i] && jumps_[i] < grid.b()))
            throw PreconditionError("step profile: jumps must lie inside (a, b)");
        if (i > 0 && !(jumps_[i - 1] < jumps_[i]))
            throw PreconditionError("step profile: jumps must be strictly increasing");
    }
}

double StepProfile::value(double x) const {
    const auto crossed = std::upper_bound(jumps_.begin(), jumps_.end(), x) - jumps_.begin();
    return crossed % 2 == 0 ? start_sign_ : -start_sign_;
}

int StepProfile::sign_left_of(std::size_t i) const { return i % 2 == 0 ? start_sign_ : -start_sign_; }

StepProfile profile_from_samples(const std::vector<double>& u, const Grid1D& grid) {
    std::vector<double> jumps;
    int start = 0;
    int current = 0;
    std::size_t last_index = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const int s = u[j] > 0.0 ? 1 : (u[j] < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (current == 0) {
            start = s;
        } else if (s != current) {
            const double xl = grid.node(last_index);
            const double xr = grid.node(j);
            const double ul = u[last_index];
            jumps.push_back(xl + (xr - xl) * ul / (ul - u[j]));
        }
        current = s;
        last_index = j;
    }
    return StepProfile(std::move(jumps), start == 0 ? 1 : start, grid);
}

double l1_distance_to_profile(const std::vector<double>& u, const Grid1D& grid, const StepProfile& profile) {
    if (u.size() != grid.cells()) throw PreconditionError("l1_distance: sample count does not match the grid");
    std::vector<double> diff(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) diff[j] = std::abs(u[j] - profile.value(grid.node(j)));
    return quad::cell_integral(diff, grid.dx());
}

namespace {

// Index of the sample in the open window (lo, hi) with sign `sign` that
// minimises F(u); ties go to the sample farthest from the jump. nullopt when
// there is none.
std::optional<std::size_t> best_sample(const std::vector<double>& u, const Grid1D& grid, const PotentialSpec& pot,
                                       double lo, double hi, int sign, bool outward_right) {
    std::optional<std::size_t> best;
    double best_F = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = grid.node(j);
        if (!(lo < x && x < hi)) continue;
        if (!(u[j] * sign > 0.0)) continue;
        const double Fj = pot.F(u[j]);
        if (Fj < best_F || (outward_right && Fj == best_F)) {
            best_F = Fj;
            best = j;
        }
    }
    return best;
}

}  // namespace

Certificate layer_certificate(const std::vector<double>& u, const Grid1D& grid, const PotentialSpec& pot,
                              const StepProfile& profile, double epsilon, int l, double delta) {
    if (u.size() != grid.cells()) throw PreconditionError("layer_certificate: sample count does not match the grid");
    if (l < 1 || !(delta > 0.0) || !(epsilon > 0.0))
        throw PreconditionError("layer_certificate: need l >= 1, delta > 0, epsilon > 0");

    std::vector<double> ends{grid.a()};
    ends.insert(ends.end(), profile.jumps().begin(), profile.jumps().end());
    ends.push_back(grid.b());
    const double reach = 2.0 * l * delta;
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
        if (!(ends[i] + reach < ends[i + 1] - reach))
            throw PreconditionError("layer_certificate: the 2 l delta neighbourhoods of the jumps are not disjoint and interior");
    }

    const double dx = grid.dx();
    const auto ux = centred_derivative(u, dx);
    std::vector<double> density(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) density[j] = 0.5 * epsilon * ux[j] * ux[j] + pot.F(u[j]) / epsilon;

    Certificate cert;
    cert.c0 = compute_c0(pot);
    for (std::size_t i = 0; i < profile.N(); ++i) {
        const double jump = profile.jumps()[i];
        const int left_sign = profile.sign_left_of(i);
        double left_edge = jump;
        double right_edge = jump;
        std::size_t ix = 0;
        std::size_t iy = 0;
        for (int k = 0; k < l; ++k) {
            auto bx = best_sample(u, grid, pot, left_edge - 2.0 * delta, left_edge, left_sign, false);
            if (!bx) throw CertificateFailure(i, jump, "left");
            auto by = best_sample(u, grid, pot, right_edge, right_edge + 2.0 * delta, -left_sign, true);
            if (!by) throw CertificateFailure(i, jump, "right");
            ix = *bx;
            iy = *by;
            left_edge = grid.node(ix);
            right_edge = grid.node(iy);
        }
        LayerCertificate layer;
        layer.jump_index = i;
        layer.jump = jump;
        layer.x = grid.node(ix);
        layer.y = grid.node(iy);
        layer.F_x = pot.F(u[ix]);
        layer.F_y = pot.F(u[iy]);
        layer.energy = quad::node_trapezoid(density, dx, ix, iy);
        cert.total_energy += layer.energy;
        cert.layers.push_back(layer);
    }
    cert.margin = cert.total_energy - static_cast<double>(profile.N()) * cert.c0;
    return cert;
}

ExitTimeTracker::ExitTimeTracker(double K_lo, double K_hi, double delta1, double reference_time)
    : K_lo_(K_lo), K_hi_(K_hi), delta1_(delta1), reference_time_(reference_time) {
    if (!(delta1 > 0.0)) throw PreconditionError("exit time: delta1 must be positive");
}

void ExitTimeTracker::add(double t, const std::vector<double>& u, const Grid1D& grid) {
    if (!reference_) {
        if (t < reference_time_) return;
        reference_ = interface_set(u, grid, K_lo_, K_hi_).intervals;
        reference_empty_ = reference_->empty();
        return;
    }
    if (reference_empty_) return;
    const auto current = interface_set(u, grid, K_lo_, K_hi_).intervals;
    const auto d = hausdorff(current, *reference_);
    const double dist = d.value_or(std::numeric_limits<double>::infinity());
    max_distance_ = std::max(max_distance_, dist);
    if (!exited_ && dist > delta1_) {
        exited_ = true;
        exit_t_ = t;
    }
}

ExitTime ExitTimeTracker::result(double horizon) const {
    if (!reference_) throw ConfigError("exit time: no sample at or after the reference time");
    if (reference_empty_) throw ConfigError("exit time: the reference interface I_K[u] is empty");
    ExitTime r;
    r.exited = exited_;
    r.time = exited_ ? exit_t_ : horizon;
    r.max_distance = max_distance_;
    return r;
}

ExitTime exit_time(const Trajectory& trajectory, double K_lo, double K_hi, double delta1, double reference_time) {
    ExitTimeTracker tracker(K_lo, K_hi, delta1, reference_time);
    for (const auto& s : trajectory.samples) tracker.add(s.t, s.u, trajectory.grid);
    return tracker.result(trajectory.horizon);
}

}  // namespace hyperac
