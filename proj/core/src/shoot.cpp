#include "slt/shoot.hpp"

#include "slt/error.hpp"
#include "slt/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace slt {

FullTrace left_solution(const Problem& problem, double lambda) {
    FullTrace out;
    out.left = integrate_subinterval(problem, Side::left, lambda, std::sin(problem.alpha()),
                                     -std::cos(problem.alpha()), Direction::forward);
    const auto [y, dy] = problem.transmission().left_to_right(out.left.y.back(), out.left.dy.back());
    out.right = integrate_subinterval(problem, Side::right, lambda, y, dy, Direction::forward);
    return out;
}

FullTrace right_solution(const Problem& problem, double lambda) {
    FullTrace out;
    out.right = integrate_subinterval(problem, Side::right, lambda, -std::sin(problem.beta()),
                                      std::cos(problem.beta()), Direction::backward);
    const auto [y, dy] = problem.transmission().right_to_left(out.right.y.front(), out.right.dy.front());
    out.left = integrate_subinterval(problem, Side::left, lambda, y, dy, Direction::backward);
    return out;
}

double wronskian(const FullTrace& phi, const FullTrace& chi, Side side, std::size_t node) {
    const HalfTrace& a = phi.half(side);
    const HalfTrace& b = chi.half(side);
    if (node >= a.y.size() || node >= b.y.size()) {
        throw Error("wronskian node " + std::to_string(node) + " outside the " + to_string(side) + " grid");
    }
    return a.y[node] * b.dy[node] - a.dy[node] * b.y[node];
}

double median_wronskian(const FullTrace& phi, const FullTrace& chi, Side side) {
    const std::size_t n = phi.half(side).y.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = wronskian(phi, chi, side, i);
    }
    auto mid = w.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(w.begin(), mid, w.end());
    if (n % 2 == 1) {
        return *mid;
    }
    const double upper = *mid;
    const double lower = *std::max_element(w.begin(), mid);
    return 0.5 * (lower + upper);
}

namespace {

CharacteristicValue evaluate(const Problem& problem, double lambda, const FullTrace& phi, const FullTrace& chi) {
    CharacteristicValue v;
    v.lambda = lambda;
    v.omega1 = median_wronskian(phi, chi, Side::left);
    v.omega2 = median_wronskian(phi, chi, Side::right);
    const double via_left = problem.transmission().minor(3, 4) * v.omega1;
    const double via_right = problem.transmission().minor(1, 2) * v.omega2;
    v.omega = via_left;
    v.consistency_residual = std::abs(via_left - via_right) / std::max(1.0, std::abs(via_left));
    return v;
}

}  // namespace

CharacteristicValue characteristic(const Problem& problem, double lambda) {
    const FullTrace phi = left_solution(problem, lambda);
    const FullTrace chi = right_solution(problem, lambda);
    return evaluate(problem, lambda, phi, chi);
}

FundamentalPair fundamental_pair(const Problem& problem, double lambda) {
    FundamentalPair out;
    out.phi = left_solution(problem, lambda);
    out.chi = right_solution(problem, lambda);
    out.value = evaluate(problem, lambda, out.phi, out.chi);
    return out;
}

}  // namespace slt
