#pragma once

#include "slt/model.hpp"
#include "slt/shoot.hpp"
#include "slt/spectrum.hpp"
#include "slt/tolerances.hpp"

namespace slt {

/// Which factor took which argument: phi always sits at the smaller point.
enum class KernelBranch { phi_at_x, phi_at_xi };

struct KernelEvaluation {
    Location x;
    Location xi;
    double lambda = 0.0;
    double value = 0.0;
    KernelBranch branch = KernelBranch::phi_at_x;
};

/// G(x, xi; lambda) = phi(min) chi(max) / Omega(lambda), with 0- < 0+.
///
/// Construction integrates phi and chi once; evaluations then interpolate
/// the stored traces. Throws NearSpectrumError when |Omega| is within
/// tol.omega_zero * omega_scale of zero.
class GreenKernel {
public:
    GreenKernel(const Problem& problem, double lambda, const Tolerances& tol = kDefaultTolerances);

    KernelEvaluation evaluate(const Location& x, const Location& xi) const;
    double operator()(const Location& x, const Location& xi) const { return evaluate(x, xi).value; }

    double lambda() const noexcept { return pair_.value.lambda; }
    double omega() const noexcept { return pair_.value.omega; }
    const FullTrace& phi() const noexcept { return pair_.phi; }
    const FullTrace& chi() const noexcept { return pair_.chi; }

    /// u = -[(Delta34/p1) int_left G f + (Delta12/p2) int_right G f] on the
    /// solver grid, solving -p u'' + (q - lambda) u = f with every boundary and
    /// transmission condition. The returned trace carries exact u'.
    FullTrace apply(const FullTrace& f) const;

private:
    Problem problem_;
    FundamentalPair pair_;
};

double green_eval(const Problem& problem, double lambda, const Location& x, const Location& xi);

FullTrace resolvent_quadrature(const Problem& problem, double lambda, const FullTrace& f,
                               const Tolerances& tol = kDefaultTolerances);
FullTrace resolvent_quadrature(const Problem& problem, double lambda, const Expression& f,
                               const Tolerances& tol = kDefaultTolerances);

/// -sum_{n<N} phi_n(x) phi_n(xi) / lambda_n. Requires an unshifted spectrum
/// with at least N pairs.
double green_series(const Spectrum& spectrum, std::size_t terms, const Location& x, const Location& xi);

/// sum_{n<N} c_n(f) phi_n / (lambda_n - lambda). Throws NearSpectrumError when
/// lambda is within tol.eigen_proximity of a used lambda_n.
FullTrace resolvent_series(const Problem& problem, const Spectrum& spectrum, const FullTrace& f, double lambda,
                           std::size_t terms, const Tolerances& tol = kDefaultTolerances);
FullTrace resolvent_series(const Problem& problem, const Spectrum& spectrum, const Expression& f, double lambda,
                           std::size_t terms, const Tolerances& tol = kDefaultTolerances);

}  // namespace slt
