#include "hyperac/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "hyperac/errors.hpp"
#include "hyperac/quadrature.hpp"

namespace hyperac {

namespace {

constexpr double kWellTolerance = 1e-12;
constexpr double kCurvatureStep = 1e-3;
constexpr int kPositivityMesh = 1000;

void require(bool ok, const std::string& name, const std::string& what) {
    if (!ok) throw InvalidPotential("potential '" + name + "': " + what);
}

void validate(const std::string& name, const PotentialSpec& pot) {
    for (double w : {-1.0, 1.0}) {
        std::ostringstream at;
        at << " at u = " << w;
        require(std::abs(pot.F(w)) <= kWellTolerance, name, "F does not vanish" + at.str());
        require(std::abs(pot.f(w)) <= kWellTolerance, name, "f does not vanish" + at.str());
        require(-pot.fprime(w) > 0.0, name, "F'' = -f' is not positive" + at.str());
        const double h = kCurvatureStep;
        const double second = (pot.F(w + h) - 2.0 * pot.F(w) + pot.F(w - h)) / (h * h);
        require(second > 0.0, name, "finite-difference curvature of F is not positive" + at.str());
    }
    for (int i = 1; i < kPositivityMesh; ++i) {
        const double s = -1.0 + 2.0 * i / kPositivityMesh;
        if (!(pot.F(s) > 0.0)) {
            std::ostringstream os;
            os << "F(" << s << ") = " << pot.F(s) << " is not positive between the wells";
            require(false, name, os.str());
        }
    }
}

// Square root of F for quadrature; rounding-level negatives at the wells are clamped.
double checked_sqrt_F(const PotentialSpec& pot, double s) {
    const double value = pot.F(s);
    if (value < -kWellTolerance || std::isnan(value)) {
        std::ostringstream os;
        os << "potential '" << pot.name() << "': F(" << s << ") = " << value << " is negative";
        throw InvalidPotential(os.str());
    }
    return std::sqrt(std::max(value, 0.0));
}

struct Registry {
    std::mutex mutex;
    std::map<std::string, std::function<PotentialSpec()>> factories;
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

PotentialSpec::PotentialSpec(std::string name, ScalarFn F, ScalarFn f, ScalarFn fprime)
    : name_(std::move(name)), F_(std::move(F)), f_(std::move(f)), fprime_(std::move(fprime)) {}

PotentialSpec PotentialSpec::make(std::string name, ScalarFn F, ScalarFn f, ScalarFn fprime) {
    PotentialSpec pot(std::move(name), std::move(F), std::move(f), std::move(fprime));
    validate(pot.name_, pot);
    return pot;
}

PotentialSpec PotentialSpec::unchecked(std::string name, ScalarFn F, ScalarFn f, ScalarFn fprime) {
    return PotentialSpec(std::move(name), std::move(F), std::move(f), std::move(fprime));
}

PotentialSpec quartic() {
    return PotentialSpec::make(
        "quartic", [](double u) { return 0.25 * (u * u - 1.0) * (u * u - 1.0); },
        [](double u) { return u - u * u * u; }, [](double u) { return 1.0 - 3.0 * u * u; });
}

PotentialSpec null_potential() {
    auto zero = [](double) { return 0.0; };
    return PotentialSpec::unchecked("null", zero, zero, zero);
}

PotentialSpec potential_by_name(const std::string& name) {
    if (name == "quartic") return quartic();
    std::function<PotentialSpec()> factory;
    {
        std::lock_guard lock(registry().mutex);
        auto it = registry().factories.find(name);
        if (it == registry().factories.end()) throw ConfigError("unknown potential '" + name + "'");
        factory = it->second;
    }
    return factory();
}

void register_potential(const std::string& name, std::function<PotentialSpec()> factory) {
    if (name == "quartic") throw ConfigError("'quartic' is builtin and cannot be replaced");
    std::lock_guard lock(registry().mutex);
    registry().factories[name] = std::move(factory);
}

std::vector<std::string> registered_potentials() {
    std::vector<std::string> names{"quartic"};
    std::lock_guard lock(registry().mutex);
    for (const auto& [name, _] : registry().factories) names.push_back(name);
    return names;
}

DampingSpec::DampingSpec(ScalarFn g, double sigma, Variant variant, double parameter)
    : g_(std::move(g)), sigma_(sigma), variant_(variant), parameter_(parameter) {}

DampingSpec DampingSpec::constant(double value) {
    if (!(value > 0.0)) throw ConfigError("constant damping must be positive");
    return DampingSpec([value](double) { return value; }, value, Variant::Constant, value);
}

DampingSpec DampingSpec::relaxation(double tau, const PotentialSpec& pot) {
    if (!(tau > 0.0)) throw ConfigError("relaxation time tau must be positive");
    // Probe mesh [-3, 3] with step 0.01; contains u = 0 where the quartic f' peaks.
    double max_fprime = -std::numeric_limits<double>::infinity();
    for (int i = -300; i <= 300; ++i) max_fprime = std::max(max_fprime, pot.fprime(i / 100.0));
    const double sigma = 1.0 - tau * max_fprime;
    if (!(sigma > 0.0)) {
        std::ostringstream os;
        os << "relaxation damping g = 1 - tau f' is not bounded below by a positive constant (tau = " << tau
           << ", 1 - tau max f' = " << sigma << "); the quartic requires tau < 1";
        throw ConfigError(os.str());
    }
    auto fprime = pot;
    return DampingSpec([tau, fprime](double u) { return 1.0 - tau * fprime.fprime(u); }, sigma, Variant::Relaxation,
                       tau);
}

double compute_c0(const PotentialSpec& pot, int quadrature_points) {
    if (quadrature_points < 2) throw PreconditionError("compute_c0 needs at least 2 quadrature points");
    return std::sqrt(2.0) * quad::simpson([&](double s) { return checked_sqrt_F(pot, s); }, -1.0, 1.0,
                                          quadrature_points);
}

double psi(const PotentialSpec& pot, double u, int quadrature_points) {
    if (!std::isfinite(u)) throw PreconditionError("psi: argument must be finite");
    return quad::simpson([&](double s) { return std::sqrt(2.0) * checked_sqrt_F(pot, s); }, 0.0, u,
                         quadrature_points);
}

}  // namespace hyperac
