#pragma once

#include "slt/error.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slt::cli {

enum ExitCode : int { success = 0, computation_failure = 1, usage_error = 2 };

class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string subcommand;
    std::optional<std::filesystem::path> problem;
    std::optional<std::size_t> grid;
    std::optional<std::filesystem::path> output;

    std::size_t count = 10;
    std::string format = "csv";
    std::size_t index = 0;
    std::size_t samples = 33;  // per subinterval, endpoints included
    double lambda = 0.0;
    std::string f;
    std::string method = "quadrature";
    std::size_t terms = 0;
    bool parseval = false;
    std::optional<std::size_t> reconstruct;
    std::string fixture;
};

/// Parses argv (program name first). Returns nullopt after printing help to
/// `out`; throws UsageError for anything malformed or out of range.
std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args, std::ostream& out);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments + run, mapping every failure to an exit code and a
/// diagnostic on `err`.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slt::cli
