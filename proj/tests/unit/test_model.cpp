#include "slt/error.hpp"
#include "slt/fixtures.hpp"
#include "slt/model.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace slt;

namespace {

constexpr double pi = std::numbers::pi;

bool mentions(const std::vector<std::string>& violations, std::string_view needle) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("minors of the jump matrix") {
    const TransmissionMatrix t({{{1, 0, -2, 0}, {0, 1, 0, -1}}});
    CHECK(t.minor(1, 2) == 1.0);
    CHECK(t.minor(1, 3) == 0.0);
    CHECK(t.minor(1, 4) == -1.0);
    CHECK(t.minor(2, 3) == 2.0);
    CHECK(t.minor(2, 4) == 0.0);
    CHECK(t.minor(3, 4) == 2.0);
    CHECK(minor(t, 3, 4) == 2.0);
    CHECK_THROWS_AS(t.minor(2, 1), std::out_of_range);
    CHECK_THROWS_AS(t.minor(0, 2), std::out_of_range);
    CHECK_THROWS_AS(t.minor(3, 5), std::out_of_range);
}

TEST_CASE("interface maps invert each other and satisfy both rows") {
    const TransmissionMatrix t({{{1.5, 0.3, -0.7, 0.2}, {-0.4, 2.0, 0.1, -1.1}}});
    const auto right = t.left_to_right(0.8, -1.3);
    const auto& r = t.rows();
    for (const auto& row : r) {
        CHECK(row[0] * right[0] + row[1] * right[1] + row[2] * 0.8 + row[3] * -1.3 == doctest::Approx(0.0));
    }
    const auto back = t.right_to_left(right[0], right[1]);
    CHECK(back[0] == doctest::Approx(0.8));
    CHECK(back[1] == doctest::Approx(-1.3));

    const auto jump = TransmissionMatrix({{{1, 0, -2, 0}, {0, 1, 0, -1}}}).left_to_right(1.0, 3.0);
    CHECK(jump[0] == 2.0);
    CHECK(jump[1] == 3.0);
}

TEST_CASE("validation lists every violation") {
    ProblemSpec bad = fixtures::c0();
    bad.p1 = -1.0;
    bad.t = TransmissionMatrix({{{1, 0, -1, 0}, {1, 0, -1, 0}}});
    bad.grid_steps = 7;
    const auto v = validate_problem(bad);
    CHECK(mentions(v, "p1 not positive"));
    CHECK(mentions(v, "Delta12=0"));
    CHECK(mentions(v, "Delta34=0"));
    CHECK(mentions(v, "grid_steps"));
    CHECK_THROWS_AS(Problem::create(bad), InvalidProblem);

    ProblemSpec flipped = fixtures::c0();
    flipped.t = TransmissionMatrix({{{1, 0, 1, 0}, {0, 1, 0, -1}}});
    CHECK(mentions(validate_problem(flipped), "weight"));

    ProblemSpec singular = fixtures::c0();
    singular.q_left = parse_expression("sqrt(x)");
    CHECK(mentions(validate_problem(singular), "q_left not evaluable"));

    CHECK(validate_problem(fixtures::c2()).empty());
}

TEST_CASE("problem accessors") {
    const Problem c1 = Problem::create(fixtures::c1());
    CHECK(c1.weight(Side::left) == 2.0);
    CHECK(c1.weight(Side::right) == 1.0);
    CHECK(c1.omega_scale() == 2.0);
    CHECK(c1.grid(Side::left).node(0) == -pi);
    CHECK(c1.grid(Side::left).node(c1.steps()) == 0.0);
    CHECK(c1.grid(Side::right).node(c1.steps()) == pi);
    CHECK(c1.with_grid(64).steps() == 64);

    const Problem c2 = Problem::create(fixtures::c2());
    CHECK(c2.max_abs_potential() == doctest::Approx(1 + pi * pi));
    const Problem lowered = c2.shifted(0.5);
    CHECK(lowered.potential(Side::right)(1.0) == doctest::Approx(1.5));
}

TEST_CASE("locations") {
    CHECK_THROWS_AS(Location::at(0.0), Error);
    CHECK_THROWS_AS(Location::at(3.2), Error);
    CHECK(Location::at(-1.0).side == Side::left);
    CHECK(Location::at(pi).side == Side::right);
    CHECK(Location::left_of_interface() < Location::right_of_interface());
    CHECK(Location::at(-0.1) < Location::left_of_interface());
    CHECK(Location::right_of_interface() < Location::at(0.1));
}

TEST_CASE("one-sided sampling at the interface") {
    const auto sign = parse_expression("x/abs(x)");
    CHECK(evaluate_one_sided(sign, 0.0, Side::left) == -1.0);
    CHECK(evaluate_one_sided(sign, 0.0, Side::right) == 1.0);
    CHECK(evaluate_one_sided(parse_expression("x + 2"), 0.0, Side::left) == 2.0);
}

TEST_CASE("differentiation is fourth order") {
    for (std::size_t n : {16u, 32u}) {
        const double h = 1.0 / n;
        std::vector<double> y(n + 1);
        for (std::size_t i = 0; i <= n; ++i) y[i] = std::sin(2.0 * h * i);
        const auto d = differentiate(y, h);
        double err = 0.0;
        for (std::size_t i = 0; i <= n; ++i) err = std::max(err, std::abs(d[i] - 2.0 * std::cos(2.0 * h * i)));
        CHECK(err < 40.0 * std::pow(h, 4));
    }
}

TEST_CASE("weighted inner product") {
    const Problem c0 = Problem::create(fixtures::c0());
    const Problem c1 = Problem::create(fixtures::c1());
    const auto one = parse_expression("1");
    CHECK(norm_squared(c0, sample(c0, one)) == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(norm_squared(c1, sample(c1, one)) == doctest::Approx(3 * pi).epsilon(1e-14));
    CHECK_THROWS_AS(inner_product(c0, sample(c0, one), sample(c0.with_grid(64), one)), Error);
}

TEST_CASE("boundary and transmission residuals") {
    const Problem c0 = Problem::create(fixtures::c0());
    const Problem c1 = Problem::create(fixtures::c1());

    const auto eigen = check_btc(c0, sample(c0, parse_expression("sin(x+pi)")));
    CHECK(eigen.max() <= 1e-6);

    const auto one = check_btc(c0, sample(c0, parse_expression("1")));
    CHECK(one.left_boundary == doctest::Approx(1.0));
    CHECK(one.right_boundary == doctest::Approx(1.0));
    CHECK(one.transmission1 == 0.0);
    CHECK(one.transmission2 == doctest::Approx(0.0));

    const auto jump = check_btc(c1, sample(c1, parse_expression("1")));
    CHECK(jump.transmission1 == doctest::Approx(1.0));
}

TEST_CASE("operator residual of an exact eigenfunction") {
    const Problem c0 = Problem::create(fixtures::c0());
    const auto y = sample(c0, parse_expression("sin(3*(x+pi)/2)"));
    CHECK(operator_residual(c0, 2.25, y) < 1e-7);
    CHECK(operator_residual(c0, 2.0, y) == doctest::Approx(0.25).epsilon(1e-6));

    const auto u = sample(c0, parse_expression("(pi^2 - x^2)/2"));
    const auto f = sample(c0, parse_expression("1"));
    CHECK(operator_residual(c0, 0.0, u, &f) < 1e-7);
}

TEST_CASE("Hermite interpolation of traces") {
    const Problem c0 = Problem::create(fixtures::c0()).with_grid(64);
    const auto y = sample(c0, parse_expression("sin(x) + x/abs(x)"));
    CHECK(y.value(Location::at(1.234)) == doctest::Approx(std::sin(1.234) + 1.0).epsilon(1e-6));
    CHECK(y.derivative(Location::at(-2.5)) == doctest::Approx(std::cos(-2.5)).epsilon(1e-5));
    CHECK(y.value(Location::left_of_interface()) == doctest::Approx(-1.0));
    CHECK(y.value(Location::right_of_interface()) == doctest::Approx(1.0));
    CHECK(y.value(Location::at(pi)) == doctest::Approx(1.0));
}
