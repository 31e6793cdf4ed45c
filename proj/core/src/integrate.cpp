#include "slt/integrate.hpp"

#include "slt/error.hpp"

#include <cmath>

namespace slt {

HalfTrace integrate_subinterval(const Problem& problem, Side side, double lambda, double y0, double dy0,
                                Direction direction, double divergence_limit) {
    const UniformGrid& grid = problem.grid(side);
    const std::size_t n = grid.steps;
    const auto q = problem.potential_half_steps(side);
    const double inv_p = 1.0 / problem.p(side);
    const bool forward = direction == Direction::forward;
    const double h = forward ? grid.step() : -grid.step();

    HalfTrace out;
    out.side = side;
    out.grid = grid;
    out.direction = direction;
    out.y.resize(n + 1);
    out.dy.resize(n + 1);

    std::size_t node = forward ? 0 : n;
    double y = y0;
    double dy = dy0;
    out.y[node] = y;
    out.dy[node] = dy;

    auto curvature = [&](std::size_t half_index, double value) { return (q[half_index] - lambda) * inv_p * value; };

    for (std::size_t step = 0; step < n; ++step) {
        // Half-step indices of this step's start, midpoint and end.
        const std::size_t k0 = 2 * node;
        const std::size_t km = forward ? k0 + 1 : k0 - 1;
        const std::size_t k1 = forward ? k0 + 2 : k0 - 2;

        const double a1 = dy;
        const double b1 = curvature(k0, y);
        const double a2 = dy + 0.5 * h * b1;
        const double b2 = curvature(km, y + 0.5 * h * a1);
        const double a3 = dy + 0.5 * h * b2;
        const double b3 = curvature(km, y + 0.5 * h * a2);
        const double a4 = dy + h * b3;
        const double b4 = curvature(k1, y + h * a3);

        y += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        dy += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        node = forward ? node + 1 : node - 1;

        if (!(std::abs(y) <= divergence_limit) || !std::isfinite(dy)) {
            throw DivergenceError("solution diverged on the " + std::string(to_string(side)) + " subinterval", node);
        }
        out.y[node] = y;
        out.dy[node] = dy;
    }
    return out;
}

}  // namespace slt
