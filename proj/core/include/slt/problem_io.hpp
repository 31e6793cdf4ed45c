#pragma once

#include "slt/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace slt {

/// Parses the key/value problem format:
///
///     p1 = 1.0
///     p2 = 1.0
///     alpha = 0.0            # radians; a quoted constant expression such as "pi/4" is accepted
///     beta = 0.0
///     q_left = "0"
///     q_right = "1 + x^2"
///     t_matrix = [[1, 0, -1, 0], [0, 1, 0, -1]]   # rows (b+_i0, b+_i1, b-_i0, b-_i1)
///     grid_steps = 2048      # optional, even
///
/// `#` starts a comment. Arrays may span lines. Throws ConfigError naming the
/// line, or the missing field.
ProblemSpec parse_problem_config(std::string_view text);

/// Reads, parses and validates. Throws Error on I/O failure, ConfigError on
/// malformed input and InvalidProblem listing every violation.
Problem load_problem(const std::filesystem::path& path);

/// Renders a spec in the format accepted by parse_problem_config.
std::string to_config(const ProblemSpec& spec);

}  // namespace slt
