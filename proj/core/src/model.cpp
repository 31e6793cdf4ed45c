#include "slt/model.hpp"

#include "slt/error.hpp"
#include "slt/quadrature.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slt {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t minor_slot(std::size_t i, std::size_t j) {
    if (i < 1 || j > 4 || i >= j) {
        throw std::out_of_range(fmt::format("minor indices must satisfy 1 <= i < j <= 4, got ({}, {})", i, j));
    }
    // 12, 13, 14, 23, 24, 34
    static constexpr std::size_t slot[5][5] = {
        {0, 0, 0, 0, 0}, {0, 0, 0, 1, 2}, {0, 0, 0, 3, 4}, {0, 0, 0, 0, 5}, {0, 0, 0, 0, 0}};
    return slot[i][j];
}

std::vector<double> sample_half_steps(const Expression& q, const UniformGrid& grid, Side side) {
    const std::size_t count = 2 * grid.steps + 1;
    const double half = grid.step() / 2.0;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double x = k + 1 == count ? grid.end : grid.start + static_cast<double>(k) * half;
        out[k] = evaluate_one_sided(q, x, side);
    }
    return out;
}

UniformGrid left_grid(std::size_t steps) { return {-kPi, 0.0, steps}; }
UniformGrid right_grid(std::size_t steps) { return {0.0, kPi, steps}; }

void require_same_grids(const Problem& problem, const FullTrace& f) {
    if (f.left.grid != problem.grid(Side::left) || f.right.grid != problem.grid(Side::right) ||
        f.left.y.size() != problem.grid(Side::left).size() || f.right.y.size() != problem.grid(Side::right).size()) {
        throw Error("grid mismatch: trace is not sampled on the problem grid");
    }
}

// Second-order one-sided derivative stencils are too coarse at the default
// grid for the residual checks, so the ends use five-point formulas.
double forward_derivative(std::span<const double> y, double h) {
    return (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h);
}

}  // namespace

TransmissionMatrix::TransmissionMatrix() : TransmissionMatrix(Rows{}) {}

TransmissionMatrix::TransmissionMatrix(const Rows& rows) : rows_(rows) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            minors_[k++] = rows_[0][i] * rows_[1][j] - rows_[0][j] * rows_[1][i];
        }
    }
}

TransmissionMatrix TransmissionMatrix::continuity() {
    return TransmissionMatrix(Rows{{{1.0, 0.0, -1.0, 0.0}, {0.0, 1.0, 0.0, -1.0}}});
}

double TransmissionMatrix::minor(std::size_t i, std::size_t j) const { return minors_[minor_slot(i, j)]; }

std::array<double, 2> TransmissionMatrix::left_to_right(double value, double slope) const {
    const double d12 = minor(1, 2);
    return {(minor(2, 3) * value + minor(2, 4) * slope) / d12,
            -(minor(1, 3) * value + minor(1, 4) * slope) / d12};
}

std::array<double, 2> TransmissionMatrix::right_to_left(double value, double slope) const {
    const double d34 = minor(3, 4);
    return {-(minor(1, 4) * value + minor(2, 4) * slope) / d34,
            (minor(1, 3) * value + minor(2, 3) * slope) / d34};
}

std::vector<std::string> validate_problem(const ProblemSpec& spec) {
    std::vector<std::string> violations;
    if (!(spec.p1 > 0.0) || !std::isfinite(spec.p1)) violations.emplace_back("p1 not positive");
    if (!(spec.p2 > 0.0) || !std::isfinite(spec.p2)) violations.emplace_back("p2 not positive");
    if (!std::isfinite(spec.alpha)) violations.emplace_back("alpha not finite");
    if (!std::isfinite(spec.beta)) violations.emplace_back("beta not finite");
    for (const auto& row : spec.t.rows()) {
        for (double b : row) {
            if (!std::isfinite(b)) {
                violations.emplace_back("t_matrix has a non-finite entry");
                break;
            }
        }
    }

    const double d12 = spec.t.minor(1, 2);
    const double d34 = spec.t.minor(3, 4);
    if (d12 == 0.0) violations.emplace_back("Delta12=0");
    if (d34 == 0.0) violations.emplace_back("Delta34=0");
    if (d34 != 0.0 && spec.p1 > 0.0 && !(d34 / spec.p1 > 0.0)) {
        violations.emplace_back(fmt::format("left weight Delta34/p1 = {} not positive", d34 / spec.p1));
    }
    if (d12 != 0.0 && spec.p2 > 0.0 && !(d12 / spec.p2 > 0.0)) {
        violations.emplace_back(fmt::format("right weight Delta12/p2 = {} not positive", d12 / spec.p2));
    }

    if (spec.grid_steps < 8 || spec.grid_steps % 2 != 0) {
        violations.emplace_back(fmt::format("grid_steps = {} must be even and at least 8", spec.grid_steps));
    } else {
        const std::pair<Side, const Expression*> sides[] = {{Side::left, &spec.q_left}, {Side::right, &spec.q_right}};
        for (const auto& [side, q] : sides) {
            const UniformGrid grid = side == Side::left ? left_grid(spec.grid_steps) : right_grid(spec.grid_steps);
            try {
                (void)sample_half_steps(*q, grid, side);
            } catch (const EvalError& e) {
                violations.emplace_back(fmt::format("q_{} not evaluable: {}", to_string(side), e.what()));
            }
        }
    }
    return violations;
}

Problem Problem::create(ProblemSpec spec) {
    auto violations = validate_problem(spec);
    if (!violations.empty()) {
        throw InvalidProblem(std::move(violations));
    }
    Problem p;
    p.spec_ = std::move(spec);
    p.weight_left_ = p.spec_.t.minor(3, 4) / p.spec_.p1;
    p.weight_right_ = p.spec_.t.minor(1, 2) / p.spec_.p2;
    p.left_grid_ = left_grid(p.spec_.grid_steps);
    p.right_grid_ = right_grid(p.spec_.grid_steps);
    p.q_left_ = std::make_shared<const std::vector<double>>(sample_half_steps(p.spec_.q_left, p.left_grid_, Side::left));
    p.q_right_ =
        std::make_shared<const std::vector<double>>(sample_half_steps(p.spec_.q_right, p.right_grid_, Side::right));
    return p;
}

std::span<const double> Problem::potential_half_steps(Side s) const noexcept {
    return s == Side::left ? std::span<const double>(*q_left_) : std::span<const double>(*q_right_);
}

double Problem::max_abs_potential() const noexcept {
    double m = 0.0;
    for (double v : *q_left_) m = std::max(m, std::abs(v));
    for (double v : *q_right_) m = std::max(m, std::abs(v));
    return m;
}

double Problem::omega_scale() const noexcept {
    return std::max(std::abs(spec_.t.minor(1, 2)), std::abs(spec_.t.minor(3, 4)));
}

Problem Problem::shifted(double shift) const {
    ProblemSpec s = spec_;
    s.q_left = s.q_left.minus_constant(shift);
    s.q_right = s.q_right.minus_constant(shift);
    return create(std::move(s));
}

Problem Problem::with_grid(std::size_t steps) const {
    ProblemSpec s = spec_;
    s.grid_steps = steps;
    return create(std::move(s));
}

double evaluate_one_sided(const Expression& f, double x, Side side, double probe) {
    if (x != 0.0) {
        return f(x);
    }
    try {
        return f(0.0);
    } catch (const EvalError&) {
        return f(side == Side::left ? -probe : probe);
    }
}

Location Location::at(double x) {
    if (x == 0.0) {
        throw Error("x = 0 is the interface; choose the left or right limit explicitly");
    }
    if (!(std::abs(x) <= kPi)) {
        throw Error(fmt::format("x = {} lies outside [-pi, pi]", x));
    }
    return {x < 0.0 ? Side::left : Side::right, x};
}

namespace {

struct Cell {
    std::size_t index;
    double t;
};

Cell locate(const UniformGrid& grid, double x) {
    const double h = grid.step();
    if (x < std::min(grid.start, grid.end) - 1e-12 || x > std::max(grid.start, grid.end) + 1e-12) {
        throw Error(fmt::format("x = {} outside subinterval [{}, {}]", x, grid.start, grid.end));
    }
    double pos = (x - grid.start) / h;
    auto k = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(grid.steps - 1)));
    return {k, pos - static_cast<double>(k)};
}

}  // namespace

double FullTrace::value(const Location& at) const {
    const HalfTrace& h = half(at.side);
    const Cell c = locate(h.grid, at.x);
    const double step = h.grid.step();
    const double t = c.t;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * h.y[c.index] + h10 * step * h.dy[c.index] + h01 * h.y[c.index + 1] + h11 * step * h.dy[c.index + 1];
}

double FullTrace::derivative(const Location& at) const {
    const HalfTrace& h = half(at.side);
    const Cell c = locate(h.grid, at.x);
    const double step = h.grid.step();
    const double t = c.t;
    const double t2 = t * t;
    const double d00 = (6 * t2 - 6 * t) / step;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = (-6 * t2 + 6 * t) / step;
    const double d11 = 3 * t2 - 2 * t;
    return d00 * h.y[c.index] + d10 * h.dy[c.index] + d01 * h.y[c.index + 1] + d11 * h.dy[c.index + 1];
}

FullTrace& FullTrace::operator*=(double factor) {
    for (HalfTrace* h : {&left, &right}) {
        for (double& v : h->y) v *= factor;
        for (double& v : h->dy) v *= factor;
    }
    return *this;
}

void FullTrace::add_scaled(const FullTrace& other, double factor) {
    for (Side s : {Side::left, Side::right}) {
        HalfTrace& a = half(s);
        const HalfTrace& b = other.half(s);
        if (a.grid != b.grid || a.y.size() != b.y.size()) {
            throw Error("grid mismatch in trace arithmetic");
        }
        for (std::size_t i = 0; i < a.y.size(); ++i) {
            a.y[i] += factor * b.y[i];
            a.dy[i] += factor * b.dy[i];
        }
    }
}

double FullTrace::max_abs() const {
    double m = 0.0;
    for (double v : left.y) m = std::max(m, std::abs(v));
    for (double v : right.y) m = std::max(m, std::abs(v));
    return m;
}

FullTrace zero_trace(const Problem& problem) {
    FullTrace t;
    for (Side s : {Side::left, Side::right}) {
        HalfTrace& h = t.half(s);
        h.side = s;
        h.grid = problem.grid(s);
        h.y.assign(h.grid.size(), 0.0);
        h.dy.assign(h.grid.size(), 0.0);
    }
    return t;
}

FullTrace sample(const Problem& problem, const Expression& f) {
    FullTrace t = zero_trace(problem);
    for (Side s : {Side::left, Side::right}) {
        HalfTrace& h = t.half(s);
        for (std::size_t i = 0; i < h.grid.size(); ++i) {
            h.y[i] = evaluate_one_sided(f, h.grid.node(i), s);
        }
        h.dy = differentiate(h.y, h.grid.step());
    }
    return t;
}

std::vector<double> differentiate(std::span<const double> y, double h) {
    const std::size_t n = y.size();
    if (n < 5) {
        throw Error("differentiation needs at least five samples");
    }
    std::vector<double> d(n);
    d[0] = forward_derivative(y, h);
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / (12.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    }
    d[n - 2] = (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] - y[n - 5]) / (12.0 * h);
    d[n - 1] = (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] + 3.0 * y[n - 5]) / (12.0 * h);
    return d;
}

double inner_product(const Problem& problem, const FullTrace& f, const FullTrace& g) {
    require_same_grids(problem, f);
    require_same_grids(problem, g);
    return problem.weight(Side::left) * simpson_product(f.left.y, g.left.y, problem.grid(Side::left).step()) +
           problem.weight(Side::right) * simpson_product(f.right.y, g.right.y, problem.grid(Side::right).step());
}

double operator_residual(const Problem& problem, double lambda, const FullTrace& y, const FullTrace* rhs) {
    require_same_grids(problem, y);
    if (rhs != nullptr) require_same_grids(problem, *rhs);
    double worst = 0.0;
    for (Side s : {Side::left, Side::right}) {
        const auto& v = y.half(s).y;
        const double h = problem.grid(s).step();
        const double p = problem.p(s);
        for (std::size_t i = 2; i + 2 < v.size(); ++i) {
            const double second = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h * h);
            double r = -p * second + (problem.potential_at_node(s, i) - lambda) * v[i];
            if (rhs != nullptr) r -= rhs->half(s).y[i];
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

double BtcResiduals::max() const {
    return std::max({left_boundary, right_boundary, transmission1, transmission2});
}

BtcResiduals check_btc(const Problem& problem, const FullTrace& f, DerivativeSource source) {
    require_same_grids(problem, f);
    const auto& l = f.left;
    const auto& r = f.right;
    double dl_start = l.dy.front();
    double dl_end = l.dy.back();
    double dr_start = r.dy.front();
    double dr_end = r.dy.back();
    if (source == DerivativeSource::differenced) {
        const auto dl = differentiate(l.y, l.grid.step());
        const auto dr = differentiate(r.y, r.grid.step());
        dl_start = dl.front();
        dl_end = dl.back();
        dr_start = dr.front();
        dr_end = dr.back();
    }
    const auto& t = problem.transmission();
    BtcResiduals out;
    out.left_boundary = std::abs(std::cos(problem.alpha()) * l.y.front() + std::sin(problem.alpha()) * dl_start);
    out.right_boundary = std::abs(std::cos(problem.beta()) * r.y.back() + std::sin(problem.beta()) * dr_end);
    for (std::size_t row = 0; row < 2; ++row) {
        const double v = t.entry(row, 3) * dl_end + t.entry(row, 2) * l.y.back() + t.entry(row, 1) * dr_start +
                         t.entry(row, 0) * r.y.front();
        (row == 0 ? out.transmission1 : out.transmission2) = std::abs(v);
    }
    return out;
}

}  // namespace slt
