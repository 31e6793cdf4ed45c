#pragma once

#include "slt/model.hpp"
#include "slt/tolerances.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace slt {

/// Leading term of the large-n law for s_n = sqrt(lambda_n), n >= 1:
/// (n - 1)/2 when both sin(alpha) and sin(beta) are nonzero, n/2 otherwise.
/// Throws std::invalid_argument for n = 0.
double asymptotic_s(const Problem& problem, std::size_t n);

/// Interval on which Omega changes sign. A degenerate bracket (lo == hi)
/// marks a node where Omega evaluated to exactly zero.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double omega_lo = std::numeric_limits<double>::quiet_NaN();
    double omega_hi = std::numeric_limits<double>::quiet_NaN();
};

struct ScanResult {
    std::vector<Bracket> brackets;
    /// Interior minima of |Omega| far below their neighbours with no sign change.
    std::vector<double> suspected_tangential;
    std::size_t evaluations = 0;
};

/// Omega on a grid over [lambda_lo, lambda_hi]: uniform in sqrt(lambda) on the
/// nonnegative part (spacing at most tol.scan_ds scaled by sqrt(min p) when
/// p < 1), uniform in lambda with step tol.scan_negative_step below zero.
/// `points` is a lower bound on the node count. Returns consecutive-node
/// sign changes in ascending order.
ScanResult scan_brackets(const Problem& problem, double lambda_lo, double lambda_hi, std::size_t points,
                         const Tolerances& tol = kDefaultTolerances);

/// Bisection until the bracket is narrower than tol * max(1, |lambda|).
/// Throws SpectrumError when Omega has the same strict sign at both ends.
double refine_eigenvalue(const Problem& problem, const Bracket& bracket, double tol = kDefaultTolerances.bisection);

struct EigenResiduals {
    double omega = 0.0;  ///< |Omega(lambda_n)|
    double btc = 0.0;    ///< max boundary/transmission residual of the normalized trace
    double ode = 0.0;    ///< max interior |-p y'' + (q - lambda) y| relative to max |y|
};

struct Eigenpair {
    std::size_t n = 0;
    double lambda = 0.0;
    std::optional<double> s;  ///< sqrt(lambda) when lambda >= 0
    FullTrace eigenfunction;  ///< unit weighted norm
    double norm_constant = 0.0;
    EigenResiduals residuals;
};

/// phi(., lambda) divided by its weighted norm. Throws SpectrumError when the
/// norm is below tol.norm_floor.
Eigenpair normalize_eigenfunction(const Problem& problem, double lambda, std::size_t n = 0,
                                  const Tolerances& tol = kDefaultTolerances);

struct ScanMetadata {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    double max_ds = 0.0;
    std::size_t evaluations = 0;
    std::size_t brackets_found = 0;
};

struct Spectrum {
    std::vector<Eigenpair> pairs;  ///< strictly increasing lambda
    /// Nonzero when lambda = 0 was an eigenvalue and the search ran on q - shift.
    /// Reported eigenvalues always belong to the original problem.
    double shift = 0.0;
    ScanMetadata scan;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return pairs.size(); }
    const Eigenpair& operator[](std::size_t i) const { return pairs.at(i); }
};

/// The `count` lowest eigenpairs.
Spectrum compute_spectrum(const Problem& problem, std::size_t count, const Tolerances& tol = kDefaultTolerances);

/// {"shift": .., "eigenvalues": [{"n", "lambda", "s", "norm_constant", "omega_residual", "btc_residual"}]}
std::string to_json(const Spectrum& spectrum);

/// Header `n,lambda,s,norm_constant`; `s` left empty for negative eigenvalues.
std::string to_csv(const Spectrum& spectrum);

}  // namespace slt
