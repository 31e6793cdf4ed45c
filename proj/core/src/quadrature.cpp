#include "slt/quadrature.hpp"

#include "slt/error.hpp"

namespace slt {

namespace {

void require_simpson_layout(std::size_t n) {
    if (n < 3 || n % 2 == 0) {
        throw Error("Simpson rule needs an odd number (>= 3) of samples, got " + std::to_string(n));
    }
}

}  // namespace

double simpson(std::span<const double> values, double step) {
    require_simpson_layout(values.size());
    const std::size_t last = values.size() - 1;
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < last; i += 2) odd += values[i];
    for (std::size_t i = 2; i < last; i += 2) even += values[i];
    return step / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[last]);
}

double simpson_product(std::span<const double> a, std::span<const double> b, double step) {
    if (a.size() != b.size()) {
        throw Error("Simpson product of arrays with different lengths");
    }
    require_simpson_layout(a.size());
    const std::size_t last = a.size() - 1;
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < last; i += 2) odd += a[i] * b[i];
    for (std::size_t i = 2; i < last; i += 2) even += a[i] * b[i];
    return step / 3.0 * (a[0] * b[0] + 4.0 * odd + 2.0 * even + a[last] * b[last]);
}

std::vector<double> cumulative_simpson(std::span<const double> v, double step) {
    require_simpson_layout(v.size());
    std::vector<double> out(v.size(), 0.0);
    const double third = step / 3.0;
    for (std::size_t i = 2; i < v.size(); i += 2) {
        out[i] = out[i - 2] + third * (v[i - 2] + 4.0 * v[i - 1] + v[i]);
    }
    // Quadratic through nodes 0, 1, 2 integrated over the first cell.
    out[1] = step / 12.0 * (5.0 * v[0] + 8.0 * v[1] - v[2]);
    for (std::size_t i = 3; i < v.size(); i += 2) {
        out[i] = out[i - 3] + 3.0 * step / 8.0 * (v[i - 3] + 3.0 * v[i - 2] + 3.0 * v[i - 1] + v[i]);
    }
    return out;
}

}  // namespace slt
