#include "hyperac/verify.hpp"

#include <cmath>
#include <sstream>

#include "hyperac/diagnostics.hpp"
#include "hyperac/experiments.hpp"
#include "hyperac/kinetics.hpp"
#include "hyperac/potential.hpp"

namespace hyperac {

namespace {

std::string describe(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

CheckResult check_c0() {
    const double exact = 2.0 * std::sqrt(2.0) / 3.0;
    const double c0 = compute_c0(quartic());
    const double err = std::abs(c0 - exact);
    return {"c0 quartic", c0, 1e-8, err <= 1e-8, "c0 = " + describe(c0) + ", |c0 - 2 sqrt(2)/3| = " + describe(err)};
}

CheckResult check_energy_identity() {
    auto config = example_config(3);
    config.horizon = 10.0;
    config.snapshot_times = {0.0, 10.0};
    config.diagnostics_every = 1000000;
    const std::size_t coarse = resolve_cells(config);
    config.cells = coarse;
    const auto r1 = run_experiment(config);
    config.cells = 2 * coarse;
    const auto r2 = run_experiment(config);
    const double ratio = r1.dissipation_residual / r2.dissipation_residual;
    const bool monotone = r2.max_energy_increase <= 10.0 * r2.dissipation_residual &&
                          r1.max_energy_increase <= 10.0 * r1.dissipation_residual;
    std::ostringstream os;
    os << "residual " << describe(r1.dissipation_residual) << " (" << coarse << " cells) -> "
       << describe(r2.dissipation_residual) << " (" << 2 * coarse << " cells), max energy increase "
       << describe(r2.max_energy_increase);
    return {"energy identity refinement ratio", ratio, 1.5, ratio >= 1.5 && monotone, os.str()};
}

CheckResult check_certificate(double eps) {
    const Grid1D grid(-4.0, 4.0, static_cast<std::size_t>(std::ceil(8.0 / (eps / 10.0))));
    const auto u0 = profiles::profile("tanh_layer", eps);
    std::vector<double> u(grid.cells());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = u0(grid.node(j));
    const StepProfile profile({0.0}, -1, grid);
    const auto cert = layer_certificate(u, grid, quartic(), profile, eps, 1, 0.5);
    return {"layer certificate eps=" + describe(eps), cert.margin, -5.0 * eps, cert.margin >= -5.0 * eps,
            "margin = " + describe(cert.margin)};
}

CheckResult check_compatibility(int n) {
    const auto report = run_example(n, ConfigOverrides{.horizon = 0.0});
    const double r = std::abs(report.compatibility_residual);
    return {"compatibility example " + std::to_string(n), r, kCompatibilityTolerance, r <= kCompatibilityTolerance,
            "residual = " + describe(report.compatibility_residual)};
}

}  // namespace

std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> out;
    out.push_back(check_c0());
    out.push_back(check_energy_identity());
    for (double eps : {0.1, 0.05, 0.02}) out.push_back(check_certificate(eps));
    for (int n = 1; n <= 4; ++n) out.push_back(check_compatibility(n));
    return out;
}

}  // namespace hyperac
