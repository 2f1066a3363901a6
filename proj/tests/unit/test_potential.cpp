#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hyperac/errors.hpp"
#include "hyperac/potential.hpp"
#include "hyperac/quadrature.hpp"

using namespace hyperac;

namespace {

// F = (1 - u^2)^2 (1 + u^2) / 4: sqrt(F) is smooth but not a polynomial.
PotentialSpec soft_sextic() {
    return PotentialSpec::make(
        "soft_sextic", [](double u) { return 0.25 * (1 - u * u) * (1 - u * u) * (1 + u * u); },
        [](double u) { return 0.5 * u * (1 - u * u) * (1 + 3 * u * u); },
        [](double u) { return 0.5 * (1 + 6 * u * u - 15 * u * u * u * u); });
}

PotentialSpec doubled_quartic() {
    return PotentialSpec::make(
        "doubled", [](double u) { return (u * u - 1) * (u * u - 1); }, [](double u) { return 4 * (u - u * u * u); },
        [](double u) { return 4 * (1 - 3 * u * u); });
}

}  // namespace

TEST_CASE("c0 of the quartic well is 2 sqrt(2)/3") {
    CHECK(compute_c0(quartic()) == doctest::Approx(2 * std::sqrt(2.0) / 3).epsilon(1e-12));
    CHECK(std::abs(compute_c0(quartic()) - 0.9428090416) < 1e-10);
}

TEST_CASE("c0 of (u^2-1)^2 is 4 sqrt(2)/3") {
    CHECK(std::abs(compute_c0(doubled_quartic()) - 4 * std::sqrt(2.0) / 3) < 1e-10);
}

TEST_CASE("c0 of the zero stub is zero") {
    CHECK(compute_c0(null_potential()) == 0.0);
}

TEST_CASE("c0 converges at fourth order under panel doubling") {
    const auto pot = soft_sextic();
    const double c8 = compute_c0(pot, 8);
    const double c16 = compute_c0(pot, 16);
    const double c32 = compute_c0(pot, 32);
    const double c64 = compute_c0(pot, 64);
    const double r1 = (c8 - c16) / (c16 - c32);
    const double r2 = (c16 - c32) / (c32 - c64);
    CHECK(r1 == doctest::Approx(16.0).epsilon(0.2));
    CHECK(r2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("c0 rejects fewer than two panels and odd counts are rounded up") {
    CHECK_THROWS_AS(compute_c0(quartic(), 1), PreconditionError);
    CHECK(compute_c0(quartic(), 7) == compute_c0(quartic(), 8));
}

TEST_CASE("psi values") {
    const double c0 = compute_c0(quartic());
    CHECK(psi(quartic(), 0.0) == 0.0);
    CHECK(psi(quartic(), 1.0) - psi(quartic(), -1.0) == doctest::Approx(c0).epsilon(1e-12));
    CHECK(std::abs(psi(quartic(), 1.0) - 0.4714045208) < 1e-9);
    // Closed form for the quartic: Psi(u) = (u - u^3/3)/sqrt(2) on [-1, 1].
    for (double u : {-0.9, -0.3, 0.25, 0.8}) CHECK(psi(quartic(), u) == doctest::Approx((u - u * u * u / 3) / std::sqrt(2.0)));
}

TEST_CASE("psi is nondecreasing") {
    for (const auto& pot : {quartic(), soft_sextic()}) {
        double prev = psi(pot, -2.0);
        for (double u = -1.95; u <= 2.0; u += 0.05) {
            const double cur = psi(pot, u);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("f is minus F' to second order") {
    for (const auto& pot : {quartic(), soft_sextic(), doubled_quartic()}) {
        for (double u = -1.5; u <= 1.5; u += 0.125) {
            auto err = [&](double h) { return std::abs(pot.f(u) + (pot.F(u + h) - pot.F(u - h)) / (2 * h)); };
            CHECK(err(1e-3) <= 50.0 * 1e-6);
            if (err(1e-2) > 1e-11) CHECK(err(1e-2) / err(5e-3) == doctest::Approx(4.0).epsilon(0.05));
        }
        for (double u = -1.5; u <= 1.5; u += 0.25) {
            const double h = 1e-4;
            CHECK(pot.fprime(u) == doctest::Approx((pot.f(u + h) - pot.f(u - h)) / (2 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("quartic wells and curvature") {
    const auto q = quartic();
    CHECK(q.F(-1) == 0.0);
    CHECK(q.F(1) == 0.0);
    CHECK(q.f(-1) == 0.0);
    CHECK(q.f(1) == 0.0);
    CHECK(-q.fprime(1) > 0.0);
    CHECK(-q.fprime(-1) > 0.0);
    CHECK(q.F(0.0) == 0.25);
    CHECK(q.f(0.5) == 0.375);
}

TEST_CASE("make rejects broken potentials") {
    auto F_shift = [](double u) { return 0.25 * (u * u - 1) * (u * u - 1) + 0.1; };
    auto f = [](double u) { return u - u * u * u; };
    auto fp = [](double u) { return 1 - 3 * u * u; };
    CHECK_THROWS_AS(PotentialSpec::make("shifted", F_shift, f, fp), InvalidPotential);

    auto F_triple = [](double u) { return 0.25 * (u * u - 1) * (u * u - 1) * u * u; };
    auto f_triple = [](double u) { return -0.5 * u * (u * u - 1) * (3 * u * u - 1); };
    auto fp_triple = [](double u) { return -0.5 * (15 * u * u * u * u - 12 * u * u + 1); };
    CHECK_THROWS_AS(PotentialSpec::make("triple", F_triple, f_triple, fp_triple), InvalidPotential);

    auto f_wrong = [](double u) { return 1 + u - u * u * u; };
    CHECK_THROWS_AS(PotentialSpec::make("bad_f", [](double u) { return 0.25 * (u * u - 1) * (u * u - 1); }, f_wrong, fp),
                    InvalidPotential);

    auto F_flat = [](double u) { return std::pow(u * u - 1, 4); };
    auto f_flat = [](double u) { return -8 * u * std::pow(u * u - 1, 3); };
    auto fp_flat = [](double u) { return -8 * std::pow(u * u - 1, 3) - 48 * u * u * std::pow(u * u - 1, 2); };
    CHECK_THROWS_AS(PotentialSpec::make("flat", F_flat, f_flat, fp_flat), InvalidPotential);

    CHECK_NOTHROW(PotentialSpec::unchecked("stub", F_shift, f, fp));
}

TEST_CASE("potential registry") {
    CHECK(potential_by_name("quartic").F(0.0) == 0.25);
    CHECK_THROWS_AS(potential_by_name("no_such_well"), ConfigError);
    CHECK_THROWS_AS(register_potential("quartic", [] { return quartic(); }), ConfigError);
    register_potential("soft_sextic", soft_sextic);
    CHECK(potential_by_name("soft_sextic").F(0.0) == 0.25);
    const auto names = registered_potentials();
    CHECK(std::find(names.begin(), names.end(), "soft_sextic") != names.end());
}

TEST_CASE("relaxation damping") {
    const auto d = DampingSpec::relaxation(0.8, quartic());
    CHECK(d.sigma() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(d.variant() == DampingSpec::Variant::Relaxation);
    CHECK(d.parameter() == 0.8);
    for (double s = -3.0; s <= 3.0; s += 0.01) {
        CHECK(d.g(s) >= d.sigma() - 1e-15);
        CHECK(d.g(s) == doctest::Approx(1 - 0.8 * (1 - 3 * s * s)));
    }
    CHECK_THROWS_AS(DampingSpec::relaxation(1.0, quartic()), ConfigError);
    CHECK_THROWS_AS(DampingSpec::relaxation(1.5, quartic()), ConfigError);
    CHECK_THROWS_AS(DampingSpec::relaxation(0.0, quartic()), ConfigError);
}

TEST_CASE("constant damping") {
    const auto d = DampingSpec::constant(0.3);
    CHECK(d.sigma() == 0.3);
    CHECK(d.g(5.0) == 0.3);
    CHECK_THROWS_AS(DampingSpec::constant(0.0), ConfigError);
}

TEST_CASE("quadrature helpers") {
    CHECK(quad::simpson([](double x) { return x * x * x; }, 0.0, 2.0, 2) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(quad::simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 200) == doctest::Approx(2.0).epsilon(1e-8));
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(quad::cell_integral(v, 0.5) == 5.0);
    CHECK(quad::node_trapezoid(v, 0.5, 0, 3) == doctest::Approx(0.5 * (0.5 + 2 + 3 + 2)));
    CHECK(quad::node_trapezoid(v, 0.5, 2, 2) == 0.0);
}
