#include "slt/error.hpp"
#include "slt/expansion.hpp"
#include "slt/fixtures.hpp"
#include "slt/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace slt;

namespace {

constexpr double pi = std::numbers::pi;

struct Classical {
    Problem problem = Problem::create(fixtures::c0());
    Spectrum spectrum = compute_spectrum(problem, 80);
};

const Classical& classical() {
    static const Classical c;
    return c;
}

}  // namespace

TEST_CASE("norm and leading coefficient of pi^2 - x^2") {
    const auto& [p, sp] = classical();
    const auto f = parse_expression("pi^2 - x^2");
    const CoefficientList c = fourier_coefficients(p, sp, f, 50);
    CHECK(c.source == "pi^2 - x^2");
    CHECK(c.grid_steps == p.steps());
    CHECK(std::abs(c.norm_squared - 16 * std::pow(pi, 5) / 15) <= 1e-6);
    // int_0^{2 pi} (2 pi t - t^2) sin(t/2) dt = 32, eigenfunction -sin((x+pi)/2)/sqrt(pi)
    CHECK(c[0] == doctest::Approx(-32 / std::sqrt(pi)).epsilon(1e-9));
    CHECK(std::abs(c[0]) == doctest::Approx(18.0540666735282).epsilon(1e-9));
    CHECK(std::abs(c[1]) < 1e-9);
    CHECK(parseval_gap(c, 50) <= 1e-4 * c.norm_squared);
    CHECK(parseval_gap(c, 50) >= 0.0);
}

TEST_CASE("coefficient of a constant") {
    const auto& [p, sp] = classical();
    CHECK(std::abs(fourier_coefficient(p, sp, parse_expression("1"), 0)) ==
          doctest::Approx(2.25675833419102).epsilon(1e-9));
}

TEST_CASE("expanding an eigenfunction reproduces it") {
    const auto& [p, sp] = classical();
    const FullTrace& phi = sp[3].eigenfunction;
    const CoefficientList c = fourier_coefficients(p, sp, phi, 8);
    for (std::size_t n = 0; n < 8; ++n) CHECK(c[n] == doctest::Approx(n == 3 ? 1.0 : 0.0).scale(1.0).epsilon(1e-9));
    FullTrace diff = partial_expansion(p, sp, c, 8);
    diff.add_scaled(phi, -1.0);
    CHECK(diff.max_abs() <= 1e-6);
}

TEST_CASE("Bessel gap is nonnegative and nonincreasing for a discontinuous input") {
    const Problem c1 = Problem::create(fixtures::c1());
    const Spectrum sp = compute_spectrum(c1, 80);
    const auto sign = parse_expression("x/abs(x)");
    const CoefficientList c = fourier_coefficients(c1, sp, sign, 80);
    double previous = c.norm_squared;
    for (std::size_t n : {5u, 10u, 20u, 40u, 80u}) {
        const double gap = parseval_gap(c, n);
        CHECK(gap >= 0.0);
        CHECK(gap <= previous);
        CHECK(mean_square_error(c1, sp, sign, n) == doctest::Approx(gap).epsilon(1e-6));
        previous = gap;
    }
    CHECK(parseval_gap(c1, sp, sign, 80) == parseval_gap(c, 80));
}

TEST_CASE("coefficients of the resolvent") {
    const auto& [p, sp] = classical();
    CHECK(coefficient_identity_check(p, sp, parse_expression("pi^2 - x^2"), 10.3, 50) <= 1e-4);
    CHECK(coefficient_identity_check(p, sp, parse_expression("exp(x/2)"), -4.0, 30) <= 1e-4);
}

TEST_CASE("partial sums of a smooth input converge uniformly") {
    const auto& [p, sp] = classical();
    const auto f = parse_expression("sin(x+pi) + 0.3*sin(2*(x+pi))*x^2");
    double previous = 1e300;
    for (std::size_t n : {5u, 10u, 20u, 40u, 80u}) {
        FullTrace diff = partial_expansion(p, sp, f, n);
        diff.add_scaled(sample(p, f), -1.0);
        CHECK(diff.max_abs() < previous);
        previous = diff.max_abs();
    }
    CHECK(previous < 2e-3);
}

TEST_CASE("term counts are checked") {
    const auto& [p, sp] = classical();
    const auto f = parse_expression("1");
    CHECK_THROWS_AS(fourier_coefficients(p, sp, f, 81), Error);
    CHECK_THROWS_AS(fourier_coefficient(p, sp, f, 80), Error);
    const CoefficientList c = fourier_coefficients(p, sp, f, 10);
    CHECK_THROWS_AS(partial_expansion(p, sp, c, 11), Error);
    CHECK_THROWS_AS(parseval_gap(c, 11), Error);
}
