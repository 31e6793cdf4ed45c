#include "slt/verify.hpp"

#include "slt/error.hpp"
#include "slt/expansion.hpp"
#include "slt/fixtures.hpp"
#include "slt/green.hpp"
#include "slt/shoot.hpp"
#include "slt/spectrum.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace slt {

namespace {

class Recorder {
public:
    explicit Recorder(std::string_view fixture) : fixture_(fixture) {}

    void bound(std::string name, double value, double threshold, std::string detail = {}) {
        results_.push_back({fixture_, std::move(name), value <= threshold, value, threshold, std::move(detail)});
    }

    void flag(std::string name, bool ok, double value, double threshold, std::string detail) {
        results_.push_back({fixture_, std::move(name), ok, value, threshold, std::move(detail)});
    }

    void failure(std::string name, const std::exception& e) {
        results_.push_back({fixture_, std::move(name), false, 0.0, 0.0, e.what()});
    }

    std::vector<PropertyResult> take() { return std::move(results_); }

private:
    std::string fixture_;
    std::vector<PropertyResult> results_;
};

std::vector<Location> probe_locations() {
    return {Location::at(-3.0),          Location::at(-2.0), Location::at(-1.0), Location::at(-0.5),
            Location::left_of_interface(), Location::right_of_interface(), Location::at(0.5), Location::at(1.0),
            Location::at(2.0),           Location::at(3.0)};
}

/// `preferred` when it keeps a safe distance from the computed eigenvalues,
/// otherwise the midpoint of the gap it falls in.
double off_spectrum(const Spectrum& spectrum, double preferred) {
    for (std::size_t n = 0; n < spectrum.size(); ++n) {
        if (std::abs(spectrum[n].lambda - preferred) < 0.05) {
            const double other = n + 1 < spectrum.size() ? spectrum[n + 1].lambda : spectrum[n].lambda + 1.0;
            return 0.5 * (spectrum[n].lambda + other);
        }
    }
    return preferred;
}

bool nonincreasing(const std::vector<double>& v, double slack = 0.0) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1] + slack) return false;
    }
    return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (double x : v) out += (out.empty() ? "" : " ") + fmt::format("{:.3e}", x);
    return out;
}

double sup_difference(const FullTrace& a, const FullTrace& b) {
    double m = 0.0;
    for (Side s : {Side::left, Side::right}) {
        const auto& x = a.half(s).y;
        const auto& y = b.half(s).y;
        for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    }
    return m;
}

void shooting_checks(Recorder& rec, const Problem& problem) {
    try {
        std::mt19937 rng(20240611u);
        double worst = 0.0;
        for (double lambda : {-2.5, 0.6, 7.3, 20.2}) {
            const FundamentalPair fp = fundamental_pair(problem, lambda);
            for (Side side : {Side::left, Side::right}) {
                const double median = median_wronskian(fp.phi, fp.chi, side);
                std::uniform_int_distribution<std::size_t> pick(0, problem.steps());
                for (int k = 0; k < 20; ++k) {
                    const double w = wronskian(fp.phi, fp.chi, side, pick(rng));
                    worst = std::max(worst, std::abs(w - median) / std::max(1.0, std::abs(median)));
                }
            }
        }
        rec.bound("wronskian_x_independence", worst, 1e-7, "20 random nodes per side, 4 lambda values");
    } catch (const std::exception& e) {
        rec.failure("wronskian_x_independence", e);
    }

    try {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double lambda = -5.0 + 30.0 * i / 49.0;
            worst = std::max(worst, characteristic(problem, lambda).consistency_residual);
        }
        rec.bound("wronskian_identity", worst, 1e-8, "50 lambda values in [-5, 25]");
    } catch (const std::exception& e) {
        rec.failure("wronskian_identity", e);
    }

    try {
        double worst = 0.0;
        double launch = 0.0;
        for (double lambda : {0.6, 7.3}) {
            const FullTrace phi = left_solution(problem, lambda);
            const FullTrace chi = right_solution(problem, lambda);
            const BtcResiduals rp = check_btc(problem, phi, DerivativeSource::stored);
            const BtcResiduals rc = check_btc(problem, chi, DerivativeSource::stored);
            const double sp = std::max({1.0, std::abs(phi.left.back()), std::abs(phi.left.dy.back())});
            const double sc = std::max({1.0, std::abs(chi.right.front()), std::abs(chi.right.dy.front())});
            worst = std::max({worst, rp.left_boundary, rp.transmission1 / sp, rp.transmission2 / sp,
                              rc.right_boundary, rc.transmission1 / sc, rc.transmission2 / sc});
            launch = std::max({launch, std::abs(std::hypot(phi.left.front(), phi.left.dy.front()) - 1.0),
                               std::abs(std::hypot(chi.right.back(), chi.right.dy.back()) - 1.0)});
        }
        rec.bound("construction_btc_residuals", worst, 1e-12, "conditions phi and chi satisfy by construction");
        rec.bound("launch_data_nontrivial", launch, 1e-15, "|(y, y')| = 1 at the launch point");
    } catch (const std::exception& e) {
        rec.failure("construction_btc_residuals", e);
    }
}

void spectrum_checks(Recorder& rec, const Problem& problem, const Spectrum& spectrum, const SuiteOptions& options) {
    const std::size_t m = std::min<std::size_t>(8, spectrum.size());
    double gram = 0.0;
    double ode = 0.0;
    double btc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double g = inner_product(problem, spectrum[i].eigenfunction, spectrum[j].eigenfunction);
            gram = std::max(gram, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
        ode = std::max(ode, spectrum[i].residuals.ode);
        btc = std::max(btc, spectrum[i].residuals.btc);
    }
    rec.bound("orthonormality_first_8", gram, 1e-6, "max |<phi_n, phi_m> - delta_nm|");
    rec.bound("eigenfunction_ode_residual", ode, 1e-5, "relative to max |phi_n|, first 8");
    rec.bound("eigenfunction_btc_residual", btc, 1e-8, "first 8");

    if (options.free_potential) {
        double worst = 0.0;
        for (std::size_t n = 1; n <= std::min<std::size_t>(20, spectrum.size()); ++n) {
            const auto& e = spectrum[n - 1];
            const double s = e.s.value_or(0.0);
            worst = std::max(worst, static_cast<double>(n) * std::abs(s - asymptotic_s(problem, n)));
        }
        rec.bound("asymptotic_law_n_le_20", worst, 1.0, "max n |s_n - asymptotic s_n|");
    }

    std::vector<double> ladder = options.free_potential ? std::vector<double>{2, 4, 6, 8, 10} : std::vector<double>{10};
    double worst_count = 0.0;
    std::string detail;
    for (double s_max : ladder) {
        std::size_t found = 0;
        // Eigenvalues landing exactly on S^2 are counted despite rounding.
        const double top = s_max * s_max * (1.0 + 1e-9);
        for (const auto& e : spectrum.pairs) found += e.lambda >= 0.0 && e.lambda <= top;
        std::size_t predicted = 0;
        for (std::size_t n = 1; asymptotic_s(problem, n) <= s_max; ++n) ++predicted;
        const double diff = std::abs(static_cast<double>(found) - static_cast<double>(predicted));
        worst_count = std::max(worst_count, diff);
        detail += fmt::format("S={}: {} vs {}; ", s_max, found, predicted);
    }
    rec.bound("count_consistency", worst_count, 1.0, detail);
}

void green_checks(Recorder& rec, const Problem& problem, const Spectrum& spectrum, const SuiteOptions& options,
                  const Tolerances& tol) {
    const auto points = probe_locations();
    const double omega0 = characteristic(problem, 0.0).omega;
    const bool zero_regular = std::abs(omega0) > tol.omega_zero * problem.omega_scale();

    try {
        const GreenKernel kernel(problem, zero_regular ? 0.0 : off_spectrum(spectrum, 0.0), tol);
        double worst = 0.0;
        for (const auto& a : points) {
            for (const auto& b : points) worst = std::max(worst, std::abs(kernel(a, b) - kernel(b, a)));
        }
        rec.bound("kernel_symmetry", worst, 0.0, "exact G(x, xi) = G(xi, x) on probe pairs");
    } catch (const std::exception& e) {
        rec.failure("kernel_symmetry", e);
    }

    const Expression probe = parse_expression("cos(x)+x/3");
    const FullTrace f = sample(problem, probe);
    try {
        double ode = 0.0;
        double btc = 0.0;
        std::string lambdas;
        for (std::size_t n = 0; n < 5; ++n) {
            const double lambda = 0.5 * (spectrum[n].lambda + spectrum[n + 1].lambda);
            const FullTrace u = resolvent_quadrature(problem, lambda, f, tol);
            ode = std::max(ode, operator_residual(problem, lambda, u, &f) / f.max_abs());
            btc = std::max(btc, check_btc(problem, u).max());
            lambdas += fmt::format("{:.4g} ", lambda);
        }
        rec.bound("resolvent_ode_residual", ode, 1e-4, "relative to max |f|, lambda = " + lambdas);
        rec.bound("resolvent_btc_residual", btc, 1e-6, "differenced derivatives, lambda = " + lambdas);
    } catch (const std::exception& e) {
        rec.failure("resolvent_residuals", e);
    }

    // A smooth input that satisfies every boundary and transmission condition.
    const double lambda_a = 0.5 * (spectrum[0].lambda + spectrum[1].lambda);
    FullTrace smooth = resolvent_quadrature(problem, lambda_a, sample(problem, parse_expression("1")), tol);
    smooth *= 1.0 / smooth.max_abs();

    try {
        const double lambda = off_spectrum(spectrum, 10.3);
        const std::size_t terms = std::min(options.series_terms, spectrum.size());
        const FullTrace quad = resolvent_quadrature(problem, lambda, smooth, tol);
        const FullTrace series = resolvent_series(problem, spectrum, smooth, lambda, terms, tol);
        rec.bound("resolvent_series_vs_quadrature", sup_difference(quad, series) / quad.max_abs(), 1e-3,
                  fmt::format("N = {}, lambda = {}", terms, lambda));
        rec.bound("coefficient_identity", coefficient_identity_check(problem, spectrum, smooth, lambda, 20, tol), 1e-4,
                  "N = 20");
    } catch (const std::exception& e) {
        rec.failure("resolvent_series_vs_quadrature", e);
    }

    if (zero_regular && spectrum.shift == 0.0) {
        try {
            const GreenKernel g0(problem, 0.0, tol);
            std::vector<double> errors;
            for (std::size_t terms : {25, 50, 100, 200, 400}) {
                if (terms > spectrum.size()) break;
                double worst = 0.0;
                for (const auto& a : points) {
                    for (const auto& b : points) {
                        worst = std::max(worst, std::abs(green_series(spectrum, terms, a, b) - g0(a, b)));
                    }
                }
                errors.push_back(worst);
            }
            rec.flag("kernel_series_monotone", nonincreasing(errors), errors.back(), 0.0,
                     "sup error at N = 25..400: " + join(errors));
        } catch (const std::exception& e) {
            rec.failure("kernel_series_monotone", e);
        }
    }

    try {
        const std::vector<std::size_t> ladder{5, 10, 20, 40, 80};
        const FullTrace sign = sample(problem, parse_expression("x/abs(x)"));
        const FullTrace one = sample(problem, parse_expression("1"));
        bool ok = true;
        double lowest = 0.0;
        std::string detail;
        for (const auto& [name, g] : {std::pair<const char*, const FullTrace*>{"smooth", &smooth},
                                      {"sign", &sign},
                                      {"one", &one}}) {
            const CoefficientList c = fourier_coefficients(problem, spectrum, *g, ladder.back());
            std::vector<double> gaps;
            for (std::size_t n : ladder) gaps.push_back(parseval_gap(c, n));
            ok = ok && nonincreasing(gaps) && gaps.back() >= -1e-8 * c.norm_squared;
            lowest = std::min(lowest, gaps.back() / c.norm_squared);
            detail += fmt::format("{}: {}; ", name, join(gaps));
        }
        rec.flag("bessel_monotone", ok, lowest, -1e-8, detail);

        std::vector<double> sup_errors;
        std::vector<double> ms_errors;
        for (std::size_t n : ladder) {
            const CoefficientList c = fourier_coefficients(problem, spectrum, smooth, n);
            sup_errors.push_back(sup_difference(smooth, partial_expansion(problem, spectrum, c, n)));
            ms_errors.push_back(mean_square_error(problem, spectrum, sign, n));
        }
        rec.flag("uniform_convergence_btc_input", strictly_decreasing(sup_errors), sup_errors.back(), 0.0,
                 "sup |f - S_N|: " + join(sup_errors));
        rec.flag("mean_square_convergence_sign", strictly_decreasing(ms_errors), ms_errors.back(), 0.0,
                 "<f - S_N, f - S_N>: " + join(ms_errors));

        const std::size_t m = 3;
        const CoefficientList c = fourier_coefficients(problem, spectrum, spectrum[m].eigenfunction, 8);
        rec.bound("expansion_idempotence",
                  sup_difference(spectrum[m].eigenfunction, partial_expansion(problem, spectrum, c, 8)), 1e-6,
                  "phi_3 expanded with N = 8");
    } catch (const std::exception& e) {
        rec.failure("expansion_checks", e);
    }
}

}  // namespace

std::vector<PropertyResult> run_property_suite(std::string_view fixture, const Problem& problem,
                                               const SuiteOptions& options, const Tolerances& tol) {
    Recorder rec(fixture);
    shooting_checks(rec, problem);

    Spectrum spectrum;
    try {
        spectrum = compute_spectrum(problem, std::max(options.kernel_terms, options.series_terms), tol);
    } catch (const std::exception& e) {
        rec.failure("compute_spectrum", e);
        return rec.take();
    }
    rec.flag("spectrum_warnings", spectrum.warnings.empty(), static_cast<double>(spectrum.warnings.size()), 0.0,
             spectrum.warnings.empty() ? "none" : spectrum.warnings.front());
    spectrum_checks(rec, problem, spectrum, options);
    green_checks(rec, problem, spectrum, options, tol);
    return rec.take();
}

std::vector<PropertyResult> run_fixture_suite(std::string_view fixture, const Tolerances& tol) {
    const auto spec = fixtures::by_name(fixture);
    if (!spec) {
        throw Error(fmt::format("unknown fixture '{}'", fixture));
    }
    ProblemSpec s = *spec;
    s.grid_steps = tol.grid_steps;
    const Problem problem = Problem::create(s);
    SuiteOptions options;
    options.free_potential = problem.max_abs_potential() == 0.0;
    return run_property_suite(fixture, problem, options, tol);
}

}  // namespace slt
