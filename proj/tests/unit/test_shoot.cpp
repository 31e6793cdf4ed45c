#include "slt/error.hpp"
#include "slt/fixtures.hpp"
#include "slt/integrate.hpp"
#include "slt/shoot.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace slt;

namespace {

constexpr double pi = std::numbers::pi;

// Closed form for the classical reduction: -sin(2 pi s)/s with s = sqrt(lambda).
double classical_omega(double lambda) {
    if (lambda > 0) return -std::sin(2 * pi * std::sqrt(lambda)) / std::sqrt(lambda);
    if (lambda < 0) return -std::sinh(2 * pi * std::sqrt(-lambda)) / std::sqrt(-lambda);
    return -2 * pi;
}

}  // namespace

TEST_CASE("characteristic function of the classical reduction") {
    const Problem c0 = Problem::create(fixtures::c0());
    CHECK(characteristic(c0, 2.0).omega == doctest::Approx(-0.362949706334132).epsilon(1e-8));
    CHECK(characteristic(c0, -1.0).omega == doctest::Approx(-267.744894041016).epsilon(1e-8));
    CHECK(characteristic(c0, 0.0).omega == doctest::Approx(-2 * pi).epsilon(1e-10));
    CHECK(characteristic(c0, 7.3).omega == doctest::Approx(0.353308294016433).epsilon(1e-7));
    for (double lambda = -3.0; lambda < 20.0; lambda += 0.37) {
        CAPTURE(lambda);
        CHECK(std::abs(characteristic(c0, lambda).omega - classical_omega(lambda)) <
              1e-7 * std::max(1.0, std::abs(classical_omega(lambda))));
    }
}

TEST_CASE("characteristic function of the jump fixture") {
    const Problem c1 = Problem::create(fixtures::c1());
    const auto v = characteristic(c1, 2.0);
    CHECK(v.omega == doctest::Approx(-0.544424559501198).epsilon(1e-8));
    CHECK(v.omega == doctest::Approx(2.0 * v.omega1));
    CHECK(v.omega2 == doctest::Approx(v.omega).epsilon(1e-10));
}

TEST_CASE("left solution matches the closed form") {
    const Problem c0 = Problem::create(fixtures::c0());
    const double s = std::sqrt(3.1);
    const FullTrace phi = left_solution(c0, 3.1);
    for (Side side : {Side::left, Side::right}) {
        const auto& h = phi.half(side);
        for (std::size_t i = 0; i < h.y.size(); i += 97) {
            const double x = h.grid.node(i);
            CHECK(h.y[i] == doctest::Approx(-std::sin(s * (x + pi)) / s).epsilon(1e-8).scale(1.0));
            CHECK(h.dy[i] == doctest::Approx(-std::cos(s * (x + pi))).epsilon(1e-8).scale(1.0));
        }
    }
    CHECK(phi.left.y.front() == 0.0);
    CHECK(phi.left.dy.front() == -1.0);
}

TEST_CASE("right solution launches from the right end") {
    const Problem c2 = Problem::create(fixtures::c2());
    const FullTrace chi = right_solution(c2, 1.7);
    CHECK(chi.right.y.back() == doctest::Approx(-std::sin(pi / 3)));
    CHECK(chi.right.dy.back() == doctest::Approx(std::cos(pi / 3)));
    CHECK(chi.right.direction == Direction::backward);
}

TEST_CASE("Wronskian of the Robin fixture at zero") {
    // 30-digit Taylor-series reference, tests/oracles/c2_reference.py
    const Problem c2 = Problem::create(fixtures::c2());
    const auto v = characteristic(c2, 0.0);
    CHECK(v.omega == doctest::Approx(167134.902457517606).epsilon(1e-8));
    CHECK(v.consistency_residual < 1e-10);
}

TEST_CASE("Wronskian is constant across nodes") {
    const Problem c2 = Problem::create(fixtures::c2());
    const auto fp = fundamental_pair(c2, 4.4);
    const double w = median_wronskian(fp.phi, fp.chi, Side::right);
    for (std::size_t i = 0; i <= c2.steps(); i += 128) {
        CHECK(wronskian(fp.phi, fp.chi, Side::right, i) == doctest::Approx(w).epsilon(1e-9));
    }
    CHECK_THROWS(wronskian(fp.phi, fp.chi, Side::left, c2.steps() + 1));
}

TEST_CASE("consistency identity on the three fixtures") {
    for (const auto& name : fixtures::suite_names()) {
        const Problem p = Problem::create(*fixtures::by_name(name));
        for (double lambda : {-5.0, -0.7, 0.0, 1.3, 9.9, 25.0}) {
            CAPTURE(name);
            CAPTURE(lambda);
            CHECK(characteristic(p, lambda).consistency_residual <= 1e-8);
        }
    }
}

TEST_CASE("divergence is reported with the node") {
    const Problem c0 = Problem::create(fixtures::c0());
    try {
        integrate_subinterval(c0, Side::left, -400.0, 0.0, 1.0, Direction::forward, 1e10);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.node() > 0);
        CHECK(e.node() <= c0.steps());
    }
}
