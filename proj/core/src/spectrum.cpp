#include "slt/spectrum.hpp"

#include "slt/error.hpp"
#include "slt/parallel.hpp"
#include "slt/shoot.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slt {

namespace {

constexpr double kSinZero = 1e-14;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double positive_spacing(const Problem& problem, const Tolerances& tol) {
    const double p_min = std::min(problem.p(Side::left), problem.p(Side::right));
    return tol.scan_ds * std::min(1.0, std::sqrt(p_min));
}

std::vector<double> scan_nodes(double lo, double hi, std::size_t points, double ds, double negative_step) {
    std::vector<double> nodes;
    const std::size_t min_points = std::max<std::size_t>(points, 2);
    if (lo < 0.0) {
        const double neg_end = std::min(hi, 0.0);
        const bool closes_range = hi <= 0.0;
        auto intervals = static_cast<std::size_t>(std::ceil((neg_end - lo) / negative_step));
        if (closes_range) intervals = std::max(intervals, min_points - 1);
        intervals = std::max<std::size_t>(intervals, 1);
        const double step = (neg_end - lo) / static_cast<double>(intervals);
        for (std::size_t j = 0; j < intervals; ++j) {
            nodes.push_back(lo + static_cast<double>(j) * step);
        }
        if (closes_range) {
            nodes.push_back(hi);
            return nodes;
        }
    }
    const double s_lo = std::sqrt(std::max(0.0, lo));
    const double s_hi = std::sqrt(hi);
    const auto needed = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / ds)) + 1;
    const std::size_t count = std::max(needed, min_points);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = i + 1 == count ? s_hi : s_lo + (s_hi - s_lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        nodes.push_back(i == 0 && lo >= 0.0 ? lo : s * s);
    }
    return nodes;
}

std::vector<double> omega_on(const Problem& problem, const std::vector<double>& nodes) {
    std::vector<double> values(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) {
        try {
            values[i] = characteristic(problem, nodes[i]).omega;
        } catch (const DivergenceError& e) {
            throw SpectrumError(fmt::format("scan aborted at lambda = {}: {}", nodes[i], e.what()));
        }
    });
    return values;
}

/// Lower end of the eigenvalue search. Robin ends admit boundary-localised
/// states near q - p cot^2, which can lie below min q.
double search_floor(const Problem& problem) {
    double margin = 0.0;
    const double sa = std::sin(problem.alpha());
    const double sb = std::sin(problem.beta());
    if (std::abs(sa) > kSinZero) {
        const double kappa = std::cos(problem.alpha()) / sa;
        if (kappa > 0.0) margin = std::max(margin, problem.p(Side::left) * kappa * kappa);
    }
    if (std::abs(sb) > kSinZero) {
        const double kappa = -std::cos(problem.beta()) / sb;
        if (kappa > 0.0) margin = std::max(margin, problem.p(Side::right) * kappa * kappa);
    }
    return -problem.max_abs_potential() - 10.0 - margin;
}

struct RootSearch {
    std::vector<Bracket> brackets;
    std::vector<std::string> warnings;
    ScanMetadata scan;
};

RootSearch find_brackets(const Problem& problem, std::size_t count, const Tolerances& tol) {
    RootSearch out;
    const double floor = search_floor(problem);
    const double p_max = std::max(problem.p(Side::left), problem.p(Side::right));
    const double half_count = (static_cast<double>(count) + 2.0) / 2.0;
    double hi = problem.max_abs_potential() + p_max * half_count * half_count + 1.0;
    double lo = floor;

    out.scan.lambda_lo = floor;
    out.scan.max_ds = positive_spacing(problem, tol);
    for (;;) {
        ScanResult r = scan_brackets(problem, lo, hi, 2, tol);
        out.scan.evaluations += r.evaluations;
        for (const Bracket& b : r.brackets) {
            if (!out.brackets.empty() && b.lo == b.hi && out.brackets.back().lo == b.lo) continue;
            out.brackets.push_back(b);
        }
        for (double t : r.suspected_tangential) {
            out.warnings.push_back(fmt::format("suspected tangential (double) zero of Omega near lambda = {:.10g}", t));
        }
        out.scan.lambda_hi = hi;
        if (out.brackets.size() >= count) break;
        if (hi >= tol.scan_lambda_max) {
            throw SpectrumError(fmt::format("scan exhausted: found {} of {} eigenvalues below lambda = {}",
                                            out.brackets.size(), count, hi));
        }
        lo = hi;
        hi = std::min(tol.scan_lambda_max, 4.0 * std::max(hi, 1.0));
    }
    out.scan.brackets_found = out.brackets.size();
    out.brackets.resize(count);
    return out;
}

Spectrum search(const Problem& problem, std::size_t count, const Tolerances& tol) {
    RootSearch roots = find_brackets(problem, count, tol);
    std::vector<Eigenpair> pairs(count);
    parallel_for(count, [&](std::size_t i) {
        const double lambda = refine_eigenvalue(problem, roots.brackets[i], tol.bisection);
        pairs[i] = normalize_eigenfunction(problem, lambda, i, tol);
    });
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (!(pairs[i].lambda > pairs[i - 1].lambda)) {
            throw SpectrumError(fmt::format("eigenvalues {} and {} are not strictly increasing ({} vs {})", i - 1, i,
                                            pairs[i - 1].lambda, pairs[i].lambda));
        }
    }
    Spectrum out;
    out.pairs = std::move(pairs);
    out.scan = roots.scan;
    out.warnings = std::move(roots.warnings);
    return out;
}

}  // namespace

double asymptotic_s(const Problem& problem, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("asymptotic_s is defined for n >= 1");
    }
    const bool sin_alpha = std::abs(std::sin(problem.alpha())) > kSinZero;
    const bool sin_beta = std::abs(std::sin(problem.beta())) > kSinZero;
    const double k = static_cast<double>(n);
    return sin_alpha && sin_beta ? (k - 1.0) / 2.0 : k / 2.0;
}

ScanResult scan_brackets(const Problem& problem, double lambda_lo, double lambda_hi, std::size_t points,
                         const Tolerances& tol) {
    if (!(lambda_lo < lambda_hi)) {
        throw std::invalid_argument("scan_brackets needs lambda_lo < lambda_hi");
    }
    if (points < 2) {
        throw std::invalid_argument("scan_brackets needs at least two points");
    }
    const std::vector<double> nodes =
        scan_nodes(lambda_lo, lambda_hi, points, positive_spacing(problem, tol), tol.scan_negative_step);
    const std::vector<double> omega = omega_on(problem, nodes);

    ScanResult out;
    out.evaluations = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (omega[i] == 0.0) {
            out.brackets.push_back({nodes[i], nodes[i], 0.0, 0.0});
            continue;
        }
        if (i > 0 && omega[i - 1] != 0.0 && sign_of(omega[i - 1]) != sign_of(omega[i])) {
            out.brackets.push_back({nodes[i - 1], nodes[i], omega[i - 1], omega[i]});
        }
        if (i > 0 && i + 1 < nodes.size()) {
            const double a = omega[i - 1];
            const double b = omega[i];
            const double c = omega[i + 1];
            if (sign_of(a) == sign_of(b) && sign_of(b) == sign_of(c) && std::abs(b) < std::abs(a) &&
                std::abs(b) < std::abs(c) && std::abs(b) < tol.tangential_ratio * std::max(std::abs(a), std::abs(c))) {
                out.suspected_tangential.push_back(nodes[i]);
            }
        }
    }
    return out;
}

double refine_eigenvalue(const Problem& problem, const Bracket& bracket, double tol) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (lo == hi) return lo;
    if (lo > hi) std::swap(lo, hi);
    double f_lo = std::isnan(bracket.omega_lo) ? characteristic(problem, lo).omega : bracket.omega_lo;
    const double f_hi = std::isnan(bracket.omega_hi) ? characteristic(problem, hi).omega : bracket.omega_hi;
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (sign_of(f_lo) == sign_of(f_hi)) {
        throw SpectrumError(fmt::format("Omega does not change sign on [{}, {}]", lo, hi));
    }
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi) {
            break;
        }
        const double f_mid = characteristic(problem, mid).omega;
        if (f_mid == 0.0) return mid;
        if (sign_of(f_mid) == sign_of(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Eigenpair normalize_eigenfunction(const Problem& problem, double lambda, std::size_t n, const Tolerances& tol) {
    FundamentalPair fp = fundamental_pair(problem, lambda);
    const double norm = std::sqrt(norm_squared(problem, fp.phi));
    if (!(norm >= tol.norm_floor)) {
        throw SpectrumError(fmt::format("eigenfunction at lambda = {} has weighted norm {} (spurious root)", lambda, norm));
    }
    Eigenpair e;
    e.n = n;
    e.lambda = lambda;
    if (lambda >= 0.0) e.s = std::sqrt(lambda);
    e.norm_constant = norm;
    e.eigenfunction = std::move(fp.phi);
    e.eigenfunction *= 1.0 / norm;
    e.residuals.omega = std::abs(fp.value.omega);
    e.residuals.btc = check_btc(problem, e.eigenfunction, DerivativeSource::stored).max();
    e.residuals.ode = operator_residual(problem, lambda, e.eigenfunction) / std::max(e.eigenfunction.max_abs(), 1e-300);
    return e;
}

Spectrum compute_spectrum(const Problem& problem, std::size_t count, const Tolerances& tol) {
    if (count == 0) {
        throw std::invalid_argument("compute_spectrum needs count >= 1");
    }
    const double omega0 = characteristic(problem, 0.0).omega;
    if (std::abs(omega0) > tol.omega_zero * problem.omega_scale()) {
        return search(problem, count, tol);
    }

    // lambda = 0 is an eigenvalue: move it off the spectrum by running the
    // search on q - shift, with the shift half way to the nearest other root.
    RootSearch roots = find_brackets(problem, count + 1, tol);
    double nearest = 0.0;
    for (const Bracket& b : roots.brackets) {
        const double r = refine_eigenvalue(problem, b, tol.bisection);
        if (std::abs(r) > tol.zero_root && (nearest == 0.0 || std::abs(r) < std::abs(nearest))) {
            nearest = r;
        }
    }
    if (nearest == 0.0) {
        throw SpectrumError("lambda = 0 is an eigenvalue and no other eigenvalue was found to place the shift");
    }
    const double shift = 0.5 * nearest;
    const Problem moved = problem.shifted(shift);
    Spectrum out = search(moved, count, tol);
    for (Eigenpair& e : out.pairs) {
        e.lambda += shift;
        e.s = e.lambda >= 0.0 ? std::optional<double>(std::sqrt(e.lambda)) : std::nullopt;
        // The moved problem's residual used lambda - shift against q - shift;
        // the ODE residual is invariant under that translation.
    }
    out.shift = shift;
    out.scan.lambda_lo += shift;
    out.scan.lambda_hi += shift;
    return out;
}

std::string to_json(const Spectrum& spectrum) {
    nlohmann::ordered_json doc;
    doc["shift"] = spectrum.shift;
    auto list = nlohmann::ordered_json::array();
    for (const Eigenpair& e : spectrum.pairs) {
        nlohmann::ordered_json item;
        item["n"] = e.n;
        item["lambda"] = e.lambda;
        item["s"] = e.s ? nlohmann::ordered_json(*e.s) : nlohmann::ordered_json(nullptr);
        item["norm_constant"] = e.norm_constant;
        item["omega_residual"] = e.residuals.omega;
        item["btc_residual"] = e.residuals.btc;
        list.push_back(std::move(item));
    }
    doc["eigenvalues"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string to_csv(const Spectrum& spectrum) {
    std::string out = "n,lambda,s,norm_constant\n";
    for (const Eigenpair& e : spectrum.pairs) {
        out += fmt::format("{},{:.15g},{},{:.15g}\n", e.n, e.lambda, e.s ? fmt::format("{:.15g}", *e.s) : "",
                           e.norm_constant);
    }
    return out;
}

}  // namespace slt
