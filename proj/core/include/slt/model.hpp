#pragma once

#include "slt/expr.hpp"
#include "slt/tolerances.hpp"

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace slt {

/// Coefficients of the two interface relations
///   b-_11 y'(0-) + b-_10 y(0-) + b+_11 y'(0+) + b+_10 y(0+) = 0
///   b-_21 y'(0-) + b-_20 y(0-) + b+_21 y'(0+) + b+_20 y(0+) = 0
/// stored row-wise as (b+_i0, b+_i1, b-_i0, b-_i1).
class TransmissionMatrix {
public:
    using Rows = std::array<std::array<double, 4>, 2>;

    TransmissionMatrix();
    explicit TransmissionMatrix(const Rows& rows);

    /// y(0+) = y(0-), y'(0+) = y'(0-).
    static TransmissionMatrix continuity();

    const Rows& rows() const noexcept { return rows_; }
    double entry(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }

    /// Determinant of columns i and j (1-based, i < j). Throws std::out_of_range otherwise.
    double minor(std::size_t i, std::size_t j) const;

    // The map from one-sided data at 0- to 0+ and back.
    std::array<double, 2> left_to_right(double value, double slope) const;
    std::array<double, 2> right_to_left(double value, double slope) const;

private:
    Rows rows_;
    std::array<double, 6> minors_{};  // 12, 13, 14, 23, 24, 34
};

inline double minor(const TransmissionMatrix& t, std::size_t i, std::size_t j) { return t.minor(i, j); }

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// Raw problem data as read from a config file.
struct ProblemSpec {
    double p1 = 1.0;
    double p2 = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    Expression q_left;
    Expression q_right;
    TransmissionMatrix t = TransmissionMatrix::continuity();
    std::size_t grid_steps = kDefaultTolerances.grid_steps;
};

/// Every violated standing assumption, one message each. Empty means valid.
std::vector<std::string> validate_problem(const ProblemSpec& spec);

/// Uniform grid on one closed subinterval. The last node is the exact endpoint.
struct UniformGrid {
    double start = 0.0;
    double end = 0.0;
    std::size_t steps = 0;

    double step() const noexcept { return (end - start) / static_cast<double>(steps); }
    std::size_t size() const noexcept { return steps + 1; }
    double node(std::size_t i) const noexcept {
        return i == steps ? end : start + static_cast<double>(i) * step();
    }
    bool operator==(const UniformGrid&) const = default;
};

/// A validated two-interval problem. Immutable; copies share cached samples
/// of the potential.
class Problem {
public:
    /// Throws InvalidProblem listing every violation.
    static Problem create(ProblemSpec spec);

    const ProblemSpec& spec() const noexcept { return spec_; }
    const TransmissionMatrix& transmission() const noexcept { return spec_.t; }
    double alpha() const noexcept { return spec_.alpha; }
    double beta() const noexcept { return spec_.beta; }
    double p(Side s) const noexcept { return s == Side::left ? spec_.p1 : spec_.p2; }
    /// Delta34/p1 on the left, Delta12/p2 on the right.
    double weight(Side s) const noexcept { return s == Side::left ? weight_left_ : weight_right_; }
    std::size_t steps() const noexcept { return spec_.grid_steps; }
    const UniformGrid& grid(Side s) const noexcept { return s == Side::left ? left_grid_ : right_grid_; }
    const Expression& potential(Side s) const noexcept {
        return s == Side::left ? spec_.q_left : spec_.q_right;
    }

    /// q at the half-step points start + k*h/2, k = 0..2N. Interface entries
    /// hold the one-sided limits.
    std::span<const double> potential_half_steps(Side s) const noexcept;
    double potential_at_node(Side s, std::size_t i) const noexcept { return potential_half_steps(s)[2 * i]; }
    double max_abs_potential() const noexcept;

    /// Scale against which |Omega| is judged: max(|Delta12|, |Delta34|).
    double omega_scale() const noexcept;

    /// Same problem with q replaced by q - shift on both sides.
    Problem shifted(double shift) const;
    /// Same problem on a different grid.
    Problem with_grid(std::size_t steps) const;

private:
    Problem() = default;

    ProblemSpec spec_;
    double weight_left_ = 0.0;
    double weight_right_ = 0.0;
    UniformGrid left_grid_;
    UniformGrid right_grid_;
    std::shared_ptr<const std::vector<double>> q_left_;
    std::shared_ptr<const std::vector<double>> q_right_;
};

/// Evaluates `f` at `x` on the given side. At the interface the plain value
/// is used when finite, otherwise the expression is probed just inside the side.
double evaluate_one_sided(const Expression& f, double x, Side side, double probe = kDefaultTolerances.interface_probe);

enum class Direction { forward, backward };

/// Samples of a function and its derivative on one subinterval.
struct HalfTrace {
    Side side = Side::left;
    UniformGrid grid;
    std::vector<double> y;
    std::vector<double> dy;
    Direction direction = Direction::forward;

    double front() const { return y.front(); }
    double back() const { return y.back(); }
};

/// A point of [-pi, 0) U (0, pi] with x = 0 resolved to a side.
struct Location {
    Side side = Side::left;
    double x = 0.0;

    /// Side taken from the sign of x; throws for x == 0 or |x| > pi.
    static Location at(double x);
    static Location left_of_interface() { return {Side::left, 0.0}; }
    static Location right_of_interface() { return {Side::right, 0.0}; }

    /// Total order with 0- < 0+.
    friend bool operator<(const Location& a, const Location& b) {
        if (a.side != b.side) return a.side == Side::left;
        return a.x < b.x;
    }
    friend bool operator==(const Location& a, const Location& b) = default;
};

/// Function sampled on both subintervals, one-sided limits at 0 kept separately.
struct FullTrace {
    HalfTrace left;
    HalfTrace right;

    const HalfTrace& half(Side s) const noexcept { return s == Side::left ? left : right; }
    HalfTrace& half(Side s) noexcept { return s == Side::left ? left : right; }

    /// Cubic Hermite interpolation of (y, y') on the containing cell.
    double value(const Location& at) const;
    double derivative(const Location& at) const;

    FullTrace& operator*=(double factor);
    /// this += factor * other (grids must match).
    void add_scaled(const FullTrace& other, double factor);
    double max_abs() const;
};

/// Zero function on the problem's grids.
FullTrace zero_trace(const Problem& problem);

/// Samples `f` on the problem's grids. Derivatives come from fourth-order
/// finite differences.
FullTrace sample(const Problem& problem, const Expression& f);

/// Fourth-order finite-difference derivative on a uniform grid.
std::vector<double> differentiate(std::span<const double> y, double step);

/// (Delta34/p1) int_left f g + (Delta12/p2) int_right f g, composite Simpson per side.
double inner_product(const Problem& problem, const FullTrace& f, const FullTrace& g);

inline double norm_squared(const Problem& problem, const FullTrace& f) { return inner_product(problem, f, f); }

/// Max over interior nodes of |-p y'' + (q - lambda) y - f| with y'' from the
/// five-point central stencil. Pass nullptr for the homogeneous equation.
double operator_residual(const Problem& problem, double lambda, const FullTrace& y, const FullTrace* rhs = nullptr);

/// Residuals of the two boundary and two interface conditions.
struct BtcResiduals {
    double left_boundary = 0.0;
    double right_boundary = 0.0;
    double transmission1 = 0.0;
    double transmission2 = 0.0;

    double max() const;
};

enum class DerivativeSource {
    /// Use the trace's stored y'.
    stored,
    /// Rebuild y' at the endpoints from one-sided differences of y.
    differenced,
};

BtcResiduals check_btc(const Problem& problem, const FullTrace& f,
                       DerivativeSource source = DerivativeSource::differenced);

}  // namespace slt
