#include "slt/problem_io.hpp"

#include "slt/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace slt {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

struct Entry {
    std::string value;
    std::size_t line;
};

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return v;
}

std::string unquote(const Entry& e, std::string_view key) {
    std::string_view v = trim(e.value);
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
        throw ConfigError(fmt::format("'{}' must be a quoted string", key), e.line);
    }
    return std::string(v.substr(1, v.size() - 2));
}

double real_value(const Entry& e, std::string_view key) {
    std::string_view v = trim(e.value);
    if (!v.empty() && v.front() == '"') {
        const std::string text = unquote(e, key);
        try {
            const Expression expr = parse_expression(text);
            if (!expr.is_constant()) {
                throw ConfigError(fmt::format("'{}' must be a constant expression, got \"{}\"", key, text), e.line);
            }
            return expr(0.0);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& err) {
            throw ConfigError(fmt::format("'{}': {}", key, err.what()), e.line);
        }
    }
    if (auto d = parse_number(v)) return *d;
    throw ConfigError(fmt::format("'{}' is not a number: {}", key, v), e.line);
}

Expression expression_value(const Entry& e, std::string_view key) {
    const std::string text = unquote(e, key);
    try {
        return parse_expression(text);
    } catch (const ParseError& err) {
        throw ConfigError(fmt::format("'{}': {}", key, err.what()), e.line);
    }
}

TransmissionMatrix matrix_value(const Entry& e) {
    std::string_view v = trim(e.value);
    auto fail = [&](std::string_view why) -> TransmissionMatrix {
        throw ConfigError(fmt::format("t_matrix {}; expected [[b+10, b+11, b-10, b-11], [b+20, b+21, b-20, b-21]]", why),
                          e.line);
    };
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') return fail("is not an array");
    v = trim(v.substr(1, v.size() - 2));
    TransmissionMatrix::Rows rows{};
    for (std::size_t r = 0; r < 2; ++r) {
        if (v.empty() || v.front() != '[') return fail("must have two rows");
        const auto close = v.find(']');
        if (close == std::string_view::npos) return fail("has an unterminated row");
        std::string_view row = v.substr(1, close - 1);
        std::size_t c = 0;
        while (!row.empty()) {
            const auto comma = row.find(',');
            const std::string_view item = comma == std::string_view::npos ? row : row.substr(0, comma);
            if (c >= 4) return fail("rows must have four entries");
            const auto d = parse_number(item);
            if (!d) return fail(fmt::format("entry '{}' is not a number", trim(item)));
            rows[r][c++] = *d;
            row = comma == std::string_view::npos ? std::string_view{} : row.substr(comma + 1);
        }
        if (c != 4) return fail("rows must have four entries");
        v = trim(v.substr(close + 1));
        if (r == 0) {
            if (v.empty() || v.front() != ',') return fail("must have two rows");
            v = trim(v.substr(1));
        }
    }
    if (!v.empty() && v != ",") return fail("must have exactly two rows");
    return TransmissionMatrix(rows);
}

int bracket_balance(std::string_view s) {
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
    }
    return depth;
}

}  // namespace

ProblemSpec parse_problem_config(std::string_view text) {
    static constexpr std::string_view kKeys[] = {"p1",      "p2",       "alpha",    "beta",
                                                 "q_left",  "q_right",  "t_matrix", "grid_steps"};
    std::map<std::string, Entry, std::less<>> entries;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("expected 'key = value', got '{}'", line), line_no);
        }
        const std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        const std::size_t start_line = line_no;
        while (bracket_balance(value) > 0 && std::getline(in, raw)) {
            ++line_no;
            value += ' ';
            value += trim(strip_comment(raw));
        }
        if (bracket_balance(value) != 0) {
            throw ConfigError(fmt::format("unbalanced brackets in '{}'", key), start_line);
        }
        bool known = false;
        for (auto k : kKeys) known = known || k == key;
        if (!known) throw ConfigError(fmt::format("unknown key '{}'", key), start_line);
        if (value.empty()) throw ConfigError(fmt::format("'{}' has no value", key), start_line);
        if (!entries.emplace(key, Entry{value, start_line}).second) {
            throw ConfigError(fmt::format("duplicate key '{}'", key), start_line);
        }
    }

    auto require = [&](std::string_view key) -> const Entry& {
        auto it = entries.find(key);
        if (it == entries.end()) throw ConfigError(fmt::format("missing required field '{}'", key), 0);
        return it->second;
    };

    ProblemSpec spec;
    spec.p1 = real_value(require("p1"), "p1");
    spec.p2 = real_value(require("p2"), "p2");
    spec.alpha = real_value(require("alpha"), "alpha");
    spec.beta = real_value(require("beta"), "beta");
    spec.q_left = expression_value(require("q_left"), "q_left");
    spec.q_right = expression_value(require("q_right"), "q_right");
    spec.t = matrix_value(require("t_matrix"));
    if (auto it = entries.find("grid_steps"); it != entries.end()) {
        const auto d = parse_number(it->second.value);
        if (!d || *d < 0 || *d != static_cast<double>(static_cast<std::size_t>(*d))) {
            throw ConfigError("'grid_steps' must be a nonnegative integer", it->second.line);
        }
        spec.grid_steps = static_cast<std::size_t>(*d);
    }
    return spec;
}

Problem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(fmt::format("cannot open problem file '{}'", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return Problem::create(parse_problem_config(buffer.str()));
}

std::string to_config(const ProblemSpec& spec) {
    const auto& r = spec.t.rows();
    return fmt::format(
        "p1 = {}\np2 = {}\nalpha = {}\nbeta = {}\nq_left = \"{}\"\nq_right = \"{}\"\n"
        "t_matrix = [[{}, {}, {}, {}], [{}, {}, {}, {}]]\ngrid_steps = {}\n",
        spec.p1, spec.p2, spec.alpha, spec.beta, spec.q_left.to_string(), spec.q_right.to_string(), r[0][0], r[0][1],
        r[0][2], r[0][3], r[1][0], r[1][1], r[1][2], r[1][3], spec.grid_steps);
}

}  // namespace slt
