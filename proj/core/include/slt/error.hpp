#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace slt {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation produced a non-finite value or divided by zero.
class EvalError : public Error {
public:
    EvalError(const std::string& what, std::string subexpression)
        : Error(what + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

/// Problem data that fails one or more standing assumptions.
class InvalidProblem : public Error {
public:
    explicit InvalidProblem(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid problem:";
        for (const auto& s : v) {
            out += " [" + s + "]";
        }
        return out;
    }

    std::vector<std::string> violations_;
};

/// Config file could not be parsed. `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Solution magnitude exceeded the overflow guard during integration.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::size_t node)
        : Error(what + " (node " + std::to_string(node) + ")"), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Requested spectral parameter is too close to an eigenvalue.
class NearSpectrumError : public Error {
public:
    using Error::Error;
};

/// Eigenvalue search failed (exhausted range, bad bracket, spurious root).
class SpectrumError : public Error {
public:
    using Error::Error;
};

}  // namespace slt
