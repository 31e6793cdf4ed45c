#include "slt/expr.hpp"

#include "slt/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <type_traits>
#include <variant>

namespace slt {

namespace detail {

struct Constant {
    double value;
};
struct Variable {};
struct Unary {
    UnaryOp op;
    std::shared_ptr<const Node> operand;
};
struct Binary {
    BinaryOp op;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};
struct Call {
    Function fn;
    std::shared_ptr<const Node> argument;
};

struct Node {
    std::variant<Constant, Variable, Unary, Binary, Call> value;
};

}  // namespace detail

namespace {

using detail::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr std::array<std::pair<std::string_view, Function>, 5> kFunctions{{
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"exp", Function::exp},
    {"sqrt", Function::sqrt},
    {"abs", Function::abs},
}};

std::string_view function_name(Function fn) {
    for (const auto& [name, f] : kFunctions) {
        if (f == fn) return name;
    }
    return "?";
}

NodePtr make(detail::Constant c) { return std::make_shared<const Node>(Node{c}); }

// Binding levels used by the printer.
enum Level : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int level_of(const Node& n) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, detail::Binary>) {
                switch (v.op) {
                    case BinaryOp::add:
                    case BinaryOp::subtract: return kSum;
                    case BinaryOp::multiply:
                    case BinaryOp::divide: return kProduct;
                    case BinaryOp::power: return kPower;
                }
                return kAtom;
            } else if constexpr (std::is_same_v<T, detail::Unary>) {
                return kUnary;
            } else {
                return kAtom;
            }
        },
        n.value);
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), end);
}

void render(const Node& n, std::string& out);

void render_child(const Node& child, int required, std::string& out) {
    if (level_of(child) < required) {
        out += '(';
        render(child, out);
        out += ')';
    } else {
        render(child, out);
    }
}

void render(const Node& n, std::string& out) {
    std::visit(
        [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, detail::Constant>) {
                if (std::signbit(v.value)) {
                    out += "(-" + format_number(-v.value) + ")";
                } else {
                    out += format_number(v.value);
                }
            } else if constexpr (std::is_same_v<T, detail::Variable>) {
                out += 'x';
            } else if constexpr (std::is_same_v<T, detail::Unary>) {
                out += '-';
                render_child(*v.operand, kUnary, out);
            } else if constexpr (std::is_same_v<T, detail::Binary>) {
                switch (v.op) {
                    case BinaryOp::add:
                    case BinaryOp::subtract:
                        render_child(*v.lhs, kSum, out);
                        out += v.op == BinaryOp::add ? '+' : '-';
                        render_child(*v.rhs, kProduct, out);
                        break;
                    case BinaryOp::multiply:
                    case BinaryOp::divide:
                        render_child(*v.lhs, kProduct, out);
                        out += v.op == BinaryOp::multiply ? '*' : '/';
                        render_child(*v.rhs, kUnary, out);
                        break;
                    case BinaryOp::power:
                        render_child(*v.lhs, kAtom, out);
                        out += '^';
                        render_child(*v.rhs, kUnary, out);
                        break;
                }
            } else {
                out += function_name(v.fn);
                out += '(';
                render(*v.argument, out);
                out += ')';
            }
        },
        n.value);
}

std::string render(const Node& n) {
    std::string out;
    render(n, out);
    return out;
}

double checked(double value, const Node& n) {
    if (!std::isfinite(value)) {
        throw EvalError("non-finite result", render(n));
    }
    return value;
}

double evaluate(const Node& n, double x) {
    return std::visit(
        [&n, x](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, detail::Constant>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, detail::Variable>) {
                return x;
            } else if constexpr (std::is_same_v<T, detail::Unary>) {
                return -evaluate(*v.operand, x);
            } else if constexpr (std::is_same_v<T, detail::Binary>) {
                const double a = evaluate(*v.lhs, x);
                const double b = evaluate(*v.rhs, x);
                switch (v.op) {
                    case BinaryOp::add: return checked(a + b, n);
                    case BinaryOp::subtract: return checked(a - b, n);
                    case BinaryOp::multiply: return checked(a * b, n);
                    case BinaryOp::divide:
                        if (b == 0.0) throw EvalError("division by zero", render(n));
                        return checked(a / b, n);
                    case BinaryOp::power: return checked(std::pow(a, b), n);
                }
                return 0.0;
            } else {
                const double a = evaluate(*v.argument, x);
                switch (v.fn) {
                    case Function::sin: return std::sin(a);
                    case Function::cos: return std::cos(a);
                    case Function::exp: return checked(std::exp(a), n);
                    case Function::sqrt:
                        if (a < 0.0) throw EvalError("square root of negative value", render(n));
                        return std::sqrt(a);
                    case Function::abs: return std::abs(a);
                }
                return 0.0;
            }
        },
        n.value);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        skip_space();
        if (pos_ == text_.size()) {
            throw ParseError("empty expression", pos_);
        }
        NodePtr root = parse_sum();
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return root;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail_expected(std::string_view what) {
        if (pos_ >= text_.size()) {
            throw ParseError("expected " + std::string(what) + " but reached end of input", pos_);
        }
        throw ParseError("expected " + std::string(what) + " but found '" + text_[pos_] + "'", pos_);
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = std::make_shared<const Node>(Node{detail::Binary{BinaryOp::add, lhs, parse_product()}});
            } else if (accept('-')) {
                lhs = std::make_shared<const Node>(Node{detail::Binary{BinaryOp::subtract, lhs, parse_product()}});
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = std::make_shared<const Node>(Node{detail::Binary{BinaryOp::multiply, lhs, parse_unary()}});
            } else if (accept('/')) {
                lhs = std::make_shared<const Node>(Node{detail::Binary{BinaryOp::divide, lhs, parse_unary()}});
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) {
            return std::make_shared<const Node>(Node{detail::Unary{UnaryOp::negate, parse_unary()}});
        }
        if (accept('+')) {
            return parse_unary();
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) {
            return std::make_shared<const Node>(Node{detail::Binary{BinaryOp::power, base, parse_unary()}});
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail_expected("operand");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!accept(')')) fail_expected("')'");
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        fail_expected("operand");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [this] {
            std::size_t n = 0;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) {
            throw ParseError("malformed number", start);
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                throw ParseError("malformed exponent", pos_);
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(value)) {
            throw ParseError("number out of range", start);
        }
        return make(detail::Constant{value});
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") {
            return std::make_shared<const Node>(Node{detail::Variable{}});
        }
        if (name == "pi") {
            return make(detail::Constant{std::numbers::pi});
        }
        for (const auto& [fname, fn] : kFunctions) {
            if (name == fname) {
                if (!accept('(')) fail_expected("'(' after " + std::string(name));
                NodePtr arg = parse_sum();
                if (!accept(')')) fail_expected("')'");
                return std::make_shared<const Node>(Node{detail::Call{fn, arg}});
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : Expression(make(detail::Constant{0.0}), "0") {}

Expression::Expression(std::shared_ptr<const detail::Node> root)
    : root_(std::move(root)), source_(render(*root_)) {}

Expression::Expression(std::shared_ptr<const detail::Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expression Expression::constant(double value) { return Expression(make(detail::Constant{value})); }

Expression Expression::variable() {
    return Expression(std::make_shared<const Node>(Node{detail::Variable{}}));
}

Expression Expression::unary(UnaryOp op, const Expression& operand) {
    return Expression(std::make_shared<const Node>(Node{detail::Unary{op, operand.root_}}));
}

Expression Expression::binary(BinaryOp op, const Expression& lhs, const Expression& rhs) {
    return Expression(std::make_shared<const Node>(Node{detail::Binary{op, lhs.root_, rhs.root_}}));
}

Expression Expression::call(Function fn, const Expression& argument) {
    return Expression(std::make_shared<const Node>(Node{detail::Call{fn, argument.root_}}));
}

double Expression::operator()(double x) const { return evaluate(*root_, x); }

std::string Expression::to_string() const { return render(*root_); }

Expression Expression::minus_constant(double value) const {
    return binary(BinaryOp::subtract, *this, constant(value));
}

namespace {

bool references_x(const detail::Node& node) {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, detail::Variable>) return true;
            if constexpr (std::is_same_v<T, detail::Unary>) return references_x(*n.operand);
            if constexpr (std::is_same_v<T, detail::Binary>) return references_x(*n.lhs) || references_x(*n.rhs);
            if constexpr (std::is_same_v<T, detail::Call>) return references_x(*n.argument);
            return false;
        },
        node.value);
}

}  // namespace

bool Expression::is_constant() const noexcept { return !references_x(*root_); }

Expression parse_expression(std::string_view text) {
    Parser parser(text);
    return Expression(parser.parse(), std::string(text));
}

}  // namespace slt
