#pragma once

#include <cstddef>

namespace slt {

/// Every numeric default the solvers use lives here so callers and tests pin
/// the same values.
struct Tolerances {
    /// Even number of uniform steps per subinterval.
    std::size_t grid_steps = 2048;
    /// |y| above this during integration is treated as divergence.
    double divergence_limit = 1e300;
    /// Omega(lambda) counts as zero when |Omega| <= omega_zero * omega_scale(P).
    double omega_zero = 1e-8;
    /// Bisection stops when the bracket is narrower than this times max(1, |lambda|).
    double bisection = 1e-12;
    /// Largest node spacing in s = sqrt(lambda) for the positive part of a scan.
    double scan_ds = 1.0 / 8.0;
    /// Node spacing in lambda for the negative part of a scan.
    double scan_negative_step = 0.25;
    /// Interior |Omega| minimum below this fraction of its neighbours without
    /// a sign change is reported as a suspected tangential zero.
    double tangential_ratio = 1e-6;
    /// Upper end of the growing scan window before giving up.
    double scan_lambda_max = 1e8;
    /// Weighted norm floor below which an eigenfunction is considered trivial.
    double norm_floor = 1e-12;
    /// |lambda - lambda_n| <= this * max(1, |lambda_n|) is "on the spectrum" for series.
    double eigen_proximity = 1e-8;
    /// Roots with |lambda| below this are treated as lambda = 0 by the shift logic.
    double zero_root = 1e-7;
    /// Offset used to probe one-sided limits of an expression singular at x = 0.
    double interface_probe = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace slt
