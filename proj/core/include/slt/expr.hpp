#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace slt {

enum class UnaryOp { negate };
enum class BinaryOp { add, subtract, multiply, divide, power };
enum class Function { sin, cos, exp, sqrt, abs };

namespace detail {
struct Node;
}

/// Immutable arithmetic expression in one variable `x`.
///
/// Grammar (lowest to highest binding):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | 'x' | 'pi' | func '(' sum ')' | '(' sum ')'
///
/// `func` is one of sin, cos, exp, sqrt, abs. Copies share the tree.
class Expression {
public:
    /// Constant zero.
    Expression();

    static Expression constant(double value);
    static Expression variable();
    static Expression unary(UnaryOp op, const Expression& operand);
    static Expression binary(BinaryOp op, const Expression& lhs, const Expression& rhs);
    static Expression call(Function fn, const Expression& argument);

    /// Evaluates at `x`. Throws EvalError on division by zero or any
    /// non-finite intermediate, naming the offending subexpression.
    double operator()(double x) const;

    /// Precedence-aware rendering; parsing the result gives an
    /// evaluation-identical tree.
    std::string to_string() const;

    /// Text the expression was parsed from, or the rendering for built trees.
    const std::string& source() const noexcept { return source_; }

    /// `*this - value`, keeping the original tree as the left operand.
    Expression minus_constant(double value) const;

    /// True when `x` does not occur.
    bool is_constant() const noexcept;

private:
    friend Expression parse_expression(std::string_view text);

    explicit Expression(std::shared_ptr<const detail::Node> root);
    Expression(std::shared_ptr<const detail::Node> root, std::string source);

    std::shared_ptr<const detail::Node> root_;
    std::string source_;
};

/// Throws ParseError (with byte offset) on malformed text or an unknown identifier.
Expression parse_expression(std::string_view text);

inline double eval_expression(const Expression& e, double x) { return e(x); }

}  // namespace slt
