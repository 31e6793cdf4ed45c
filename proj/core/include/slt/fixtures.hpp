#pragma once

#include "slt/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slt::fixtures {

/// p1 = p2 = 1, q = 0, Dirichlet ends, continuity across 0. Eigenvalues (k/2)^2.
ProblemSpec c0();

/// c0 with y(0+) = 2 y(0-), y'(0+) = y'(0-). Same eigenvalues, weights 2 and 1.
ProblemSpec c1();

/// Robin ends alpha = pi/4, beta = pi/3, q = 1 + x^2, continuity across 0.
ProblemSpec c2();

/// c0 with q = -1/4, so lambda = 0 is an eigenvalue (spectrum (k/2)^2 - 1/4).
ProblemSpec c0_zero_mode();

/// Looks up "c0", "c1", "c2" or "c0_zero_mode".
std::optional<ProblemSpec> by_name(std::string_view name);

/// Names of the fixtures covered by the property suite.
std::vector<std::string> suite_names();

}  // namespace slt::fixtures
