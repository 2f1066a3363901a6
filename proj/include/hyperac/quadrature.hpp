#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace hyperac::quad {

/// Composite Simpson on [lo, hi] with `panels` subintervals (rounded up to
/// even, at least 2). Works for lo > hi with the usual sign convention.
double simpson(const std::function<double(double)>& fn, double lo, double hi, int panels);

/// Integral over a cell-centred grid of width dx: trapezoid rule through the
/// nodes with the end values extended flat to the walls, which reduces to
/// dx * sum(values).
double cell_integral(std::span<const double> values, double dx);

/// Trapezoid rule through nodes first..last (inclusive) with spacing dx.
double node_trapezoid(std::span<const double> values, double dx, std::size_t first, std::size_t last);

}  // namespace hyperac::quad
