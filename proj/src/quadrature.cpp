#include "hyperac/quadrature.hpp"

#include <algorithm>

namespace hyperac::quad {

double simpson(const std::function<double(double)>& fn, double lo, double hi, int panels) {
    int n = std::max(panels, 2);
    if (n % 2 != 0) ++n;
    const double h = (hi - lo) / n;
    if (h == 0.0) return 0.0;
    double odd = 0.0;
    double even = 0.0;
    for (int i = 1; i < n; ++i) {
        const double v = fn(lo + i * h);
        if (i % 2 != 0) {
            odd += v;
        } else {
            even += v;
        }
    }
    return h / 3.0 * (fn(lo) + 4.0 * odd + 2.0 * even + fn(hi));
}

double cell_integral(std::span<const double> values, double dx) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * dx;
}

double node_trapezoid(std::span<const double> values, double dx, std::size_t first, std::size_t last) {
    if (last <= first) return 0.0;
    double sum = 0.5 * (values[first] + values[last]);
    for (std::size_t j = first + 1; j < last; ++j) sum += values[j];
    return sum * dx;
}

}  // namespace hyperac::quad
