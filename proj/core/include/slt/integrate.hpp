#pragma once

#include "slt/model.hpp"

namespace slt {

/// Classical RK4 on (y, y')' = (y', (q - lambda) y / p) over one subinterval
/// with the problem's uniform step. Forward starts at the left end of the
/// subinterval, backward at the right end; samples are always stored in
/// ascending x. Throws DivergenceError when |y| exceeds `divergence_limit`.
HalfTrace integrate_subinterval(const Problem& problem, Side side, double lambda, double y0, double dy0,
                                Direction direction, double divergence_limit = kDefaultTolerances.divergence_limit);

}  // namespace slt
