#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hyperac {

using ScalarFn = std::function<double(double)>;

/// Double-well potential F with wells at -1 and +1, supplied together with
/// the reaction term f = -F' and its derivative f'.
///
/// `make` validates the structural hypotheses (zero wells, positive
/// curvature at the wells, F > 0 strictly between them). `unchecked` skips
/// validation and exists for degenerate test stubs such as F = 0.
class PotentialSpec {
public:
    static PotentialSpec make(std::string name, ScalarFn F, ScalarFn f, ScalarFn fprime);
    static PotentialSpec unchecked(std::string name, ScalarFn F, ScalarFn f, ScalarFn fprime);

    double F(double u) const { return F_(u); }
    double f(double u) const { return f_(u); }
    double fprime(double u) const { return fprime_(u); }

    const std::string& name() const noexcept { return name_; }
    static constexpr std::pair<double, double> wells() noexcept { return {-1.0, 1.0}; }

private:
    PotentialSpec(std::string name, ScalarFn F, ScalarFn f, ScalarFn fprime);

    std::string name_;
    ScalarFn F_;
    ScalarFn f_;
    ScalarFn fprime_;
};

/// F(u) = (u^2 - 1)^2 / 4, f(u) = u - u^3.
PotentialSpec quartic();

/// Reaction-free stub (F = f = f' = 0), used to isolate the transport part of the scheme.
PotentialSpec null_potential();

/// Looks up a potential by name. "quartic" is always available; further
/// potentials can be added with `register_potential`. Throws ConfigError on
/// an unknown name.
PotentialSpec potential_by_name(const std::string& name);
void register_potential(const std::string& name, std::function<PotentialSpec()> factory);
std::vector<std::string> registered_potentials();

/// Damping coefficient g(u) in tau u_tt + g(u) u_t = eps^2 u_xx + f(u),
/// together with a certified lower bound sigma > 0.
class DampingSpec {
public:
    enum class Variant { Constant, Relaxation };

    /// g(u) = value.
    static DampingSpec constant(double value);
    /// g(u) = 1 - tau f'(u). sigma is 1 - tau * max f' over the probe mesh.
    static DampingSpec relaxation(double tau, const PotentialSpec& pot);

    double g(double u) const { return g_(u); }
    double sigma() const noexcept { return sigma_; }
    Variant variant() const noexcept { return variant_; }
    /// The constant value, or tau for the relaxation variant.
    double parameter() const noexcept { return parameter_; }

private:
    DampingSpec(ScalarFn g, double sigma, Variant variant, double parameter);

    ScalarFn g_;
    double sigma_;
    Variant variant_;
    double parameter_;
};

inline constexpr int kDefaultQuadraturePanels = 2048;

/// c0 = sqrt(2) * integral_{-1}^{1} sqrt(F(s)) ds, the minimal energy of one
/// transition, by composite Simpson with `quadrature_points` panels (rounded
/// up to even).
double compute_c0(const PotentialSpec& pot, int quadrature_points = kDefaultQuadraturePanels);

/// Psi(u) = integral_0^u sqrt(2 F(s)) ds.
double psi(const PotentialSpec& pot, double u, int quadrature_points = kDefaultQuadraturePanels);

}  // namespace hyperac
