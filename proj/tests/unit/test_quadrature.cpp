#include "slt/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include "slt/error.hpp"
#include <vector>

namespace {

std::vector<double> samples(double (*f)(double), double a, double b, std::size_t steps) {
    std::vector<double> v(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) v[i] = f(a + (b - a) * static_cast<double>(i) / steps);
    return v;
}

}  // namespace

TEST_CASE("Simpson is exact for cubics") {
    const auto v = samples([](double x) { return 4 * x * x * x - 3 * x * x + 1; }, 0.0, 2.0, 8);
    CHECK(slt::simpson(v, 0.25) == doctest::Approx(16.0 - 8.0 + 2.0).epsilon(1e-14));
}

TEST_CASE("Simpson of a product") {
    const auto a = samples([](double x) { return x; }, 0.0, 1.0, 10);
    const auto b = samples([](double x) { return x * x; }, 0.0, 1.0, 10);
    CHECK(slt::simpson_product(a, b, 0.1) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("Simpson rejects even sample counts") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(slt::simpson(v, 0.1), slt::Error);
    CHECK_THROWS_AS(slt::simpson(std::vector<double>{1.0}, 0.1), slt::Error);
}

TEST_CASE("cumulative Simpson tracks the antiderivative") {
    const std::size_t n = 64;
    const double h = 3.0 / n;
    const auto v = samples([](double x) { return std::cos(x); }, 0.0, 3.0, n);
    const auto c = slt::cumulative_simpson(v, h);
    REQUIRE(c.size() == v.size());
    CHECK(c[0] == 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        CHECK(c[i] == doctest::Approx(std::sin(h * i)).epsilon(1e-7));
    }
    CHECK(c.back() == doctest::Approx(slt::simpson(v, h)).epsilon(1e-14));
}
