#include "slt/fixtures.hpp"

#include <numbers>

namespace slt::fixtures {

ProblemSpec c0() {
    ProblemSpec s;
    s.p1 = 1.0;
    s.p2 = 1.0;
    s.alpha = 0.0;
    s.beta = 0.0;
    s.q_left = parse_expression("0");
    s.q_right = parse_expression("0");
    s.t = TransmissionMatrix::continuity();
    return s;
}

ProblemSpec c1() {
    ProblemSpec s = c0();
    s.t = TransmissionMatrix({{{1.0, 0.0, -2.0, 0.0}, {0.0, 1.0, 0.0, -1.0}}});
    return s;
}

ProblemSpec c2() {
    ProblemSpec s = c0();
    s.alpha = std::numbers::pi / 4.0;
    s.beta = std::numbers::pi / 3.0;
    s.q_left = parse_expression("1+x^2");
    s.q_right = parse_expression("1+x^2");
    return s;
}

ProblemSpec c0_zero_mode() {
    ProblemSpec s = c0();
    s.q_left = parse_expression("-0.25");
    s.q_right = parse_expression("-0.25");
    return s;
}

std::optional<ProblemSpec> by_name(std::string_view name) {
    if (name == "c0") return c0();
    if (name == "c1") return c1();
    if (name == "c2") return c2();
    if (name == "c0_zero_mode") return c0_zero_mode();
    return std::nullopt;
}

std::vector<std::string> suite_names() { return {"c0", "c1", "c2"}; }

}  // namespace slt::fixtures
