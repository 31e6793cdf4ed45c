#pragma once

#include "slt/model.hpp"
#include "slt/spectrum.hpp"
#include "slt/tolerances.hpp"

#include <string>
#include <vector>

namespace slt {

/// Weighted inner products of one function with the first N eigenfunctions.
struct CoefficientList {
    std::vector<double> values;
    std::string source;      ///< description of the expanded function
    std::size_t grid_steps = 0;
    double norm_squared = 0.0;  ///< <f, f> on the same grid

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t n) const { return values.at(n); }
};

double fourier_coefficient(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, std::size_t n);
double fourier_coefficient(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t n);

CoefficientList fourier_coefficients(const Problem& problem, const Spectrum& spectrum, const FullTrace& f,
                                     std::size_t terms, std::string source = {});
CoefficientList fourier_coefficients(const Problem& problem, const Spectrum& spectrum, const Expression& f,
                                     std::size_t terms);

/// sum_{n<N} c_n phi_n on the solver grid (ascending n).
FullTrace partial_expansion(const Problem& problem, const Spectrum& spectrum, const CoefficientList& coefficients,
                            std::size_t terms);
FullTrace partial_expansion(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t terms);

/// <f, f> - sum_{n<N} c_n^2.
double parseval_gap(const CoefficientList& coefficients, std::size_t terms);
double parseval_gap(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t terms);

/// max_{n<N} |c_n(f) - (lambda_n - lambda) c_n(u)| / max(1, |c_n(f)|) with u
/// the quadrature resolvent of f at lambda.
double coefficient_identity_check(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, double lambda,
                                  std::size_t terms, const Tolerances& tol = kDefaultTolerances);
double coefficient_identity_check(const Problem& problem, const Spectrum& spectrum, const Expression& f, double lambda,
                                  std::size_t terms, const Tolerances& tol = kDefaultTolerances);

/// <f - S_N, f - S_N> with S_N the partial expansion.
double mean_square_error(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, std::size_t terms);
double mean_square_error(const Problem& problem, const Spectrum& spectrum, const Expression& f, std::size_t terms);

}  // namespace slt
