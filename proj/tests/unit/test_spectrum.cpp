#include "slt/error.hpp"
#include "slt/fixtures.hpp"
#include "slt/parallel.hpp"
#include "slt/spectrum.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

using namespace slt;

namespace {

constexpr double pi = std::numbers::pi;

Problem with_potential(const char* q) {
    ProblemSpec s = fixtures::c0();
    s.q_left = parse_expression(q);
    s.q_right = parse_expression(q);
    return Problem::create(s);
}

}  // namespace

TEST_CASE("classical reduction eigenvalues") {
    const Spectrum sp = compute_spectrum(Problem::create(fixtures::c0()), 12);
    REQUIRE(sp.size() == 12);
    CHECK(sp.shift == 0.0);
    CHECK(sp.warnings.empty());
    for (std::size_t n = 0; n < sp.size(); ++n) {
        const double k = static_cast<double>(n + 1);
        CHECK(sp[n].n == n);
        CHECK(sp[n].lambda == doctest::Approx(k * k / 4).epsilon(1e-9));
        CHECK(*sp[n].s == doctest::Approx(k / 2).epsilon(1e-9));
        CHECK(sp[n].residuals.btc <= 1e-8);
        CHECK(sp[n].residuals.ode <= 1e-5);
    }
    // phi = -sin(s(x+pi))/s has weighted norm sqrt(pi)/s.
    CHECK(sp[0].norm_constant == doctest::Approx(2 * std::sqrt(pi)).epsilon(1e-9));
    CHECK(sp[0].eigenfunction.value(Location::at(0.5)) ==
          doctest::Approx(-std::sin(0.5 * (0.5 + pi)) / std::sqrt(pi)).epsilon(1e-8));
}

TEST_CASE("jump fixture eigenvalues and interface ratio") {
    const Spectrum sp = compute_spectrum(Problem::create(fixtures::c1()), 6);
    for (std::size_t n = 0; n < 6; ++n) {
        const double k = static_cast<double>(n + 1);
        CHECK(sp[n].lambda == doctest::Approx(k * k / 4).epsilon(1e-9));
    }
    for (std::size_t n : {0u, 2u, 4u}) {
        const auto& f = sp[n].eigenfunction;
        CHECK(f.value(Location::right_of_interface()) / f.value(Location::left_of_interface()) ==
              doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("Robin fixture against high-precision shooting") {
    // 30-digit Taylor-series reference, tests/oracles/c2_reference.py
    const double reference[] = {1.9994657724439615676, 3.9893197704753907929, 5.8985787125166687565,
                                7.4956860896722235963, 9.0105499696737805984};
    const Spectrum sp = compute_spectrum(Problem::create(fixtures::c2()), 5);
    for (std::size_t n = 0; n < 5; ++n) {
        CHECK(sp[n].lambda == doctest::Approx(reference[n]).epsilon(1e-10));
    }
}

TEST_CASE("coefficient p scales the spectrum") {
    ProblemSpec s = fixtures::c0();
    s.p1 = 4.0;
    s.p2 = 4.0;
    const Spectrum sp = compute_spectrum(Problem::create(s), 5);
    for (std::size_t n = 0; n < 5; ++n) {
        const double k = static_cast<double>(n + 1);
        CHECK(sp[n].lambda == doctest::Approx(k * k).epsilon(1e-9));
    }
}

TEST_CASE("negative eigenvalues have no s") {
    const Spectrum sp = compute_spectrum(with_potential("-2"), 4);
    CHECK(sp[0].lambda == doctest::Approx(-1.75).epsilon(1e-9));
    CHECK(sp[1].lambda == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK_FALSE(sp[0].s.has_value());
    CHECK(sp[2].s.has_value());
    CHECK(sp.shift == 0.0);
}

TEST_CASE("zero eigenvalue triggers a shift") {
    const Spectrum sp = compute_spectrum(Problem::create(fixtures::c0_zero_mode()), 6);
    CHECK(sp.shift != 0.0);
    for (std::size_t n = 0; n < 6; ++n) {
        const double k = static_cast<double>(n + 1);
        CHECK(std::abs(sp[n].lambda - (k * k / 4 - 0.25)) <= 1e-8);
    }
}

TEST_CASE("asymptotic law") {
    CHECK(asymptotic_s(Problem::create(fixtures::c0()), 3) == 1.5);
    CHECK(asymptotic_s(Problem::create(fixtures::c2()), 3) == 1.0);
    CHECK_THROWS_AS(asymptotic_s(Problem::create(fixtures::c0()), 0), std::invalid_argument);
}

TEST_CASE("scan and bisection") {
    const Problem c0 = Problem::create(fixtures::c0());
    const ScanResult scan = scan_brackets(c0, 0.1, 5.0, 200);
    REQUIRE(scan.brackets.size() == 4);
    CHECK(scan.evaluations >= 200);
    CHECK(refine_eigenvalue(c0, scan.brackets[2]) == doctest::Approx(2.25).epsilon(1e-11));
    CHECK_THROWS_AS(refine_eigenvalue(c0, Bracket{0.3, 0.9}), SpectrumError);
}

TEST_CASE("serialization") {
    const Spectrum sp = compute_spectrum(with_potential("-2"), 3);
    const auto j = nlohmann::json::parse(to_json(sp));
    CHECK(j["shift"] == 0.0);
    REQUIRE(j["eigenvalues"].size() == 3);
    CHECK(j["eigenvalues"][0]["n"] == 0);
    CHECK(j["eigenvalues"][0]["s"].is_null());
    CHECK(j["eigenvalues"][2]["s"].get<double>() == doctest::Approx(0.5));
    CHECK(j["eigenvalues"][1].contains("omega_residual"));
    CHECK(j["eigenvalues"][1].contains("btc_residual"));

    const std::string csv = to_csv(sp);
    CHECK(csv.rfind("n,lambda,s,norm_constant\n", 0) == 0);
    CHECK(csv.find("\n0,-1.7") != std::string::npos);
    CHECK(csv.find("\n2,0.2") != std::string::npos);
}

TEST_CASE("results do not depend on the worker count") {
    const Problem c2 = Problem::create(fixtures::c2());
    setenv("SLT_THREADS", "1", 1);
    const std::string serial = to_json(compute_spectrum(c2, 20));
    setenv("SLT_THREADS", "4", 1);
    const std::string parallel = to_json(compute_spectrum(c2, 20));
    unsetenv("SLT_THREADS");
    CHECK(serial == parallel);
}
