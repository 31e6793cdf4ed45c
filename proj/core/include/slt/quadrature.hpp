#pragma once

#include <span>
#include <vector>

namespace slt {

/// Composite Simpson rule on uniformly spaced samples. Requires an odd number
/// of samples (even number of intervals), at least three.
double simpson(std::span<const double> values, double step);

/// Composite Simpson rule of the pointwise product a*b.
double simpson_product(std::span<const double> a, std::span<const double> b, double step);

/// Running integral from the first node: result[i] approximates the integral
/// over [x_0, x_i]. Even nodes use plain Simpson; odd nodes close with the
/// 3/8 rule (or the three-point end correction for i = 1), so every entry is
/// fourth-order and the last entry matches `simpson` exactly.
std::vector<double> cumulative_simpson(std::span<const double> values, double step);

}  // namespace slt
