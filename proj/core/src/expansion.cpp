#include "slt/expansion.hpp"

#include "slt/error.hpp"
#include "slt/green.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace slt {

namespace {

void require_terms(const Spectrum& spectrum, std::size_t terms) {
    if (terms > spectrum.size()) {
        throw Error(fmt::format("expansion asked for {} terms but only {} eigenpairs are available", terms,
                                spectrum.size()));
    }
}

}  // namespace

double fourier_coefficient(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, std::size_t n) {
    require_terms(spectrum, n + 1);
    return inner_product(problem, f, spectrum.pairs[n].eigenfunction);
}

double fourier_coefficient(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t n) {
    return fourier_coefficient(problem, spectrum, sample(problem, f), n);
}

CoefficientList fourier_coefficients(const Problem& problem, const Spectrum& spectrum, const FullTrace& f,
                                     std::size_t terms, std::string source) {
    require_terms(spectrum, terms);
    CoefficientList out;
    out.source = std::move(source);
    out.grid_steps = problem.steps();
    out.norm_squared = norm_squared(problem, f);
    out.values.resize(terms);
    for (std::size_t n = 0; n < terms; ++n) {
        out.values[n] = inner_product(problem, f, spectrum.pairs[n].eigenfunction);
    }
    return out;
}

CoefficientList fourier_coefficients(const Problem& problem, const Spectrum& spectrum, const Expression& f,
                                     std::size_t terms) {
    return fourier_coefficients(problem, spectrum, sample(problem, f), terms, f.source());
}

FullTrace partial_expansion(const Problem& problem, const Spectrum& spectrum, const CoefficientList& coefficients,
                            std::size_t terms) {
    require_terms(spectrum, terms);
    if (terms > coefficients.size()) {
        throw Error("partial expansion needs a coefficient for every term");
    }
    FullTrace out = zero_trace(problem);
    for (std::size_t n = 0; n < terms; ++n) {
        out.add_scaled(spectrum.pairs[n].eigenfunction, coefficients.values[n]);
    }
    return out;
}

FullTrace partial_expansion(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t terms) {
    return partial_expansion(problem, spectrum, fourier_coefficients(problem, spectrum, f, terms), terms);
}

double parseval_gap(const CoefficientList& coefficients, std::size_t terms) {
    if (terms > coefficients.size()) {
        throw Error("parseval_gap needs a coefficient for every term");
    }
    double captured = 0.0;
    for (std::size_t n = 0; n < terms; ++n) {
        captured += coefficients.values[n] * coefficients.values[n];
    }
    return coefficients.norm_squared - captured;
}

double parseval_gap(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t terms) {
    return parseval_gap(fourier_coefficients(problem, spectrum, f, terms), terms);
}

double coefficient_identity_check(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, double lambda,
                                  std::size_t terms, const Tolerances& tol) {
    require_terms(spectrum, terms);
    const FullTrace u = resolvent_quadrature(problem, lambda, f, tol);
    double worst = 0.0;
    for (std::size_t n = 0; n < terms; ++n) {
        const Eigenpair& e = spectrum.pairs[n];
        const double cf = inner_product(problem, f, e.eigenfunction);
        const double cu = inner_product(problem, u, e.eigenfunction);
        worst = std::max(worst, std::abs(cf - (e.lambda - lambda) * cu) / std::max(1.0, std::abs(cf)));
    }
    return worst;
}

double coefficient_identity_check(const Problem& problem, const Spectrum& spectrum, const Expression& f, double lambda,
                                  std::size_t terms, const Tolerances& tol) {
    return coefficient_identity_check(problem, spectrum, sample(problem, f), lambda, terms, tol);
}

double mean_square_error(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, std::size_t terms) {
    const CoefficientList c = fourier_coefficients(problem, spectrum, f, terms);
    FullTrace residual = f;
    residual.add_scaled(partial_expansion(problem, spectrum, c, terms), -1.0);
    return norm_squared(problem, residual);
}

double mean_square_error(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t terms) {
    return mean_square_error(problem, spectrum, sample(problem, f), terms);
}

}  // namespace slt
