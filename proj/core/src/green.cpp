#include "slt/green.hpp"

#include "slt/error.hpp"
#include "slt/quadrature.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace slt {

GreenKernel::GreenKernel(const Problem& problem, double lambda, const Tolerances& tol)
    : problem_(problem), pair_(fundamental_pair(problem, lambda)) {
    if (!(std::abs(pair_.value.omega) > tol.omega_zero * problem.omega_scale())) {
        throw NearSpectrumError(fmt::format("lambda is within tolerance of an eigenvalue (lambda = {}, |Omega| = {:.3g})",
                                            lambda, std::abs(pair_.value.omega)));
    }
}

KernelEvaluation GreenKernel::evaluate(const Location& x, const Location& xi) const {
    KernelEvaluation out;
    out.x = x;
    out.xi = xi;
    out.lambda = lambda();
    const bool x_first = !(xi < x);
    const Location& low = x_first ? x : xi;
    const Location& high = x_first ? xi : x;
    out.branch = x_first ? KernelBranch::phi_at_x : KernelBranch::phi_at_xi;
    out.value = pair_.phi.value(low) * pair_.chi.value(high) / omega();
    return out;
}

FullTrace GreenKernel::apply(const FullTrace& f) const {
    const FullTrace& phi = pair_.phi;
    const FullTrace& chi = pair_.chi;
    FullTrace u = zero_trace(problem_);
    if (f.left.y.size() != u.left.y.size() || f.right.y.size() != u.right.y.size() ||
        f.left.grid != u.left.grid || f.right.grid != u.right.grid) {
        throw Error("grid mismatch: input is not sampled on the problem grid");
    }

    // u(x) = -[chi(x) A(x) + phi(x) B(x)] / Omega, where A accumulates the
    // weighted phi f from -pi up to x and B the weighted chi f from x to pi.
    auto weighted_products = [&](Side s, const FullTrace& g) {
        const auto& a = g.half(s).y;
        const auto& b = f.half(s).y;
        std::vector<double> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = problem_.weight(s) * a[i] * b[i];
        return out;
    };

    const double h_left = problem_.grid(Side::left).step();
    const double h_right = problem_.grid(Side::right).step();
    std::vector<double> a_left = cumulative_simpson(weighted_products(Side::left, phi), h_left);
    std::vector<double> a_right = cumulative_simpson(weighted_products(Side::right, phi), h_right);
    for (double& v : a_right) v += a_left.back();

    std::vector<double> chi_f_left = weighted_products(Side::left, chi);
    std::vector<double> chi_f_right = weighted_products(Side::right, chi);
    // Integrals from x to the right end via the running integral of the reversed samples.
    std::reverse(chi_f_left.begin(), chi_f_left.end());
    std::reverse(chi_f_right.begin(), chi_f_right.end());
    std::vector<double> b_left = cumulative_simpson(chi_f_left, h_left);
    std::vector<double> b_right = cumulative_simpson(chi_f_right, h_right);
    std::reverse(b_left.begin(), b_left.end());
    std::reverse(b_right.begin(), b_right.end());
    for (double& v : b_left) v += b_right.front();

    const double scale = -1.0 / omega();
    auto fill = [&](Side s, const std::vector<double>& a, const std::vector<double>& b) {
        HalfTrace& out = u.half(s);
        const HalfTrace& ph = phi.half(s);
        const HalfTrace& ch = chi.half(s);
        for (std::size_t i = 0; i < out.y.size(); ++i) {
            out.y[i] = scale * (ch.y[i] * a[i] + ph.y[i] * b[i]);
            out.dy[i] = scale * (ch.dy[i] * a[i] + ph.dy[i] * b[i]);
        }
    };
    fill(Side::left, a_left, b_left);
    fill(Side::right, a_right, b_right);
    return u;
}

double green_eval(const Problem& problem, double lambda, const Location& x, const Location& xi) {
    return GreenKernel(problem, lambda)(x, xi);
}

FullTrace resolvent_quadrature(const Problem& problem, double lambda, const FullTrace& f, const Tolerances& tol) {
    return GreenKernel(problem, lambda, tol).apply(f);
}

FullTrace resolvent_quadrature(const Problem& problem, double lambda, const Expression& f, const Tolerances& tol) {
    return resolvent_quadrature(problem, lambda, sample(problem, f), tol);
}

double green_series(const Spectrum& spectrum, std::size_t terms, const Location& x, const Location& xi) {
    if (spectrum.shift != 0.0) {
        throw Error("green_series needs a spectrum without shift (lambda = 0 must not be an eigenvalue)");
    }
    if (terms > spectrum.size()) {
        throw Error(fmt::format("green_series asked for {} terms but only {} eigenpairs are available", terms,
                                spectrum.size()));
    }
    double sum = 0.0;
    for (std::size_t n = 0; n < terms; ++n) {
        const Eigenpair& e = spectrum.pairs[n];
        sum += e.eigenfunction.value(x) * e.eigenfunction.value(xi) / e.lambda;
    }
    return -sum;
}

FullTrace resolvent_series(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, double lambda,
                           std::size_t terms, const Tolerances& tol) {
    if (terms > spectrum.size()) {
        throw Error(fmt::format("resolvent_series asked for {} terms but only {} eigenpairs are available", terms,
                                spectrum.size()));
    }
    FullTrace u = zero_trace(problem);
    for (std::size_t n = 0; n < terms; ++n) {
        const Eigenpair& e = spectrum.pairs[n];
        if (std::abs(lambda - e.lambda) <= tol.eigen_proximity * std::max(1.0, std::abs(e.lambda))) {
            throw NearSpectrumError(
                fmt::format("lambda is within tolerance of an eigenvalue (lambda = {}, lambda_{} = {})", lambda, n, e.lambda));
        }
        const double c = inner_product(problem, f, e.eigenfunction);
        u.add_scaled(e.eigenfunction, c / (e.lambda - lambda));
    }
    return u;
}

FullTrace resolvent_series(const Problem& problem, const Spectrum& spectrum, const Expression& f, double lambda,
                           std::size_t terms, const Tolerances& tol) {
    return resolvent_series(problem, spectrum, sample(problem, f), lambda, terms, tol);
}

}  // namespace slt
