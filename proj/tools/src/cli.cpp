#include "slt_cli/cli.hpp"

#include "slt/expansion.hpp"
#include "slt/expr.hpp"
#include "slt/fixtures.hpp"
#include "slt/green.hpp"
#include "slt/problem_io.hpp"
#include "slt/spectrum.hpp"
#include "slt/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace slt::cli {

namespace {

constexpr double kPi = std::numbers::pi;

/// Signed zero is reserved for the 0- location column.
std::string num(double v) { return fmt::format("{:.15g}", v == 0.0 ? 0.0 : v); }

/// M points per side, endpoints included; the interface appears as -0 and 0.
std::vector<Location> sample_locations(std::size_t per_side) {
    std::vector<Location> out;
    out.reserve(2 * per_side);
    const double h = kPi / static_cast<double>(per_side - 1);
    for (std::size_t i = 0; i + 1 < per_side; ++i) out.push_back(Location::at(-kPi + h * static_cast<double>(i)));
    out.push_back(Location::left_of_interface());
    out.push_back(Location::right_of_interface());
    for (std::size_t i = 1; i < per_side; ++i) {
        out.push_back(Location::at(i + 1 == per_side ? kPi : h * static_cast<double>(i)));
    }
    return out;
}

std::string location_text(const Location& at) {
    if (at.x == 0.0) return at.side == Side::left ? "-0" : "0";
    return num(at.x);
}

Problem load(const RunConfig& config) {
    ProblemSpec spec;
    {
        std::ifstream in(*config.problem);
        if (!in) throw UsageError(fmt::format("cannot open problem file '{}'", config.problem->string()));
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
            spec = parse_problem_config(buffer.str());
        } catch (const ConfigError& e) {
            throw UsageError(fmt::format("{}: {}", config.problem->string(), e.what()));
        }
    }
    if (config.grid) spec.grid_steps = *config.grid;
    try {
        return Problem::create(spec);
    } catch (const InvalidProblem& e) {
        throw UsageError(fmt::format("{}: {}", config.problem->string(), e.what()));
    }
}

Expression input_function(const RunConfig& config) {
    try {
        return parse_expression(config.f);
    } catch (const ParseError& e) {
        throw UsageError(fmt::format("--f: {}", e.what()));
    }
}

void cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Problem problem = load(config);
    const Spectrum spectrum = compute_spectrum(problem, config.count);
    for (const auto& w : spectrum.warnings) fmt::print(err, "warning: {}\n", w);
    out << (config.format == "json" ? to_json(spectrum) : to_csv(spectrum));
}

void cmd_eigenfunction(const RunConfig& config, std::ostream& out) {
    const Problem problem = load(config);
    const Spectrum spectrum = compute_spectrum(problem, config.index + 1);
    const Eigenpair& e = spectrum[config.index];
    fmt::print(out, "# n={} lambda={} norm_constant={}\n", e.n, num(e.lambda), num(e.norm_constant));
    out << "x,phi\n";
    for (const auto& at : sample_locations(config.samples)) {
        fmt::print(out, "{},{}\n", location_text(at), num(e.eigenfunction.value(at)));
    }
}

void cmd_green(const RunConfig& config, std::ostream& out) {
    const Problem problem = load(config);
    const GreenKernel kernel(problem, config.lambda);
    const auto points = sample_locations(config.samples);
    fmt::print(out, "# lambda={} omega={}\n", num(config.lambda), num(kernel.omega()));
    out << "x,xi,G\n";
    for (const auto& x : points) {
        for (const auto& xi : points) {
            fmt::print(out, "{},{},{}\n", location_text(x), location_text(xi), num(kernel(x, xi)));
        }
    }
}

void cmd_resolvent(const RunConfig& config, std::ostream& out) {
    const Problem problem = load(config);
    const Expression expr = input_function(config);
    const FullTrace f = sample(problem, expr);
    FullTrace u;
    if (config.method == "series") {
        const Spectrum spectrum = compute_spectrum(problem, config.terms);
        u = resolvent_series(problem, spectrum, f, config.lambda, config.terms);
    } else {
        u = resolvent_quadrature(problem, config.lambda, f);
    }
    const double residual = operator_residual(problem, config.lambda, u, &f);
    const double btc = check_btc(problem, u).max();
    out << "x,u\n";
    for (const auto& at : sample_locations(config.samples)) {
        fmt::print(out, "{},{}\n", location_text(at), num(u.value(at)));
    }
    fmt::print(out, "# max_residual={} btc_residual={}\n", num(residual), num(btc));
}

void cmd_expand(const RunConfig& config, std::ostream& out) {
    const Problem problem = load(config);
    const Expression expr = input_function(config);
    const FullTrace f = sample(problem, expr);
    const Spectrum spectrum = compute_spectrum(problem, config.terms);
    const CoefficientList c = fourier_coefficients(problem, spectrum, f, config.terms, expr.source());
    out << "n,c_n\n";
    for (std::size_t n = 0; n < c.size(); ++n) fmt::print(out, "{},{}\n", n, num(c[n]));

    const double btc = check_btc(problem, f).max();
    const bool smooth_regime = btc <= 1e-6 * std::max(1.0, f.max_abs());
    fmt::print(out, "# btc_residual={} expected_convergence={}\n", num(btc), smooth_regime ? "uniform" : "mean-square");
    if (config.parseval) {
        fmt::print(out, "# norm2={} parseval_gap={}\n", num(c.norm_squared), num(parseval_gap(c, config.terms)));
    }
    if (config.reconstruct) {
        const FullTrace partial = partial_expansion(problem, spectrum, c, config.terms);
        out << "# reconstruction\nx,f,S_N\n";
        for (const auto& at : sample_locations(*config.reconstruct)) {
            fmt::print(out, "{},{},{}\n", location_text(at), num(f.value(at)), num(partial.value(at)));
        }
    }
}

bool print_results(const std::vector<PropertyResult>& results, std::ostream& out) {
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        fmt::print(out, "{} {} {} value={:.3e} threshold={:.3e} {}\n", r.passed ? "PASS" : "FAIL", r.fixture, r.name,
                   r.value, r.threshold, r.detail);
    }
    return all;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
    Tolerances tol;
    if (config.grid) tol.grid_steps = *config.grid;
    bool all = true;
    if (config.problem && config.fixture.empty()) {
        const Problem problem = load(config);
        all = print_results(run_property_suite(config.problem->stem().string(), problem, {}, tol), out);
    } else {
        const std::string which = config.fixture.empty() ? "all" : config.fixture;
        const auto names = which == "all" ? fixtures::suite_names() : std::vector<std::string>{which};
        for (const auto& name : names) all = print_results(run_fixture_suite(name, tol), out) && all;
    }
    fmt::print(out, "{}\n", all ? "all properties passed" : "some properties FAILED");
    return all ? success : computation_failure;
}

void require(bool ok, std::string_view message) {
    if (!ok) throw UsageError(std::string(message));
}

void validate(const RunConfig& c, const CLI::App& app) {
    const bool needs_problem = c.subcommand != "verify";
    require(!needs_problem || c.problem.has_value(), "--problem is required");
    require(!c.grid || (*c.grid >= 8 && *c.grid % 2 == 0), "--grid must be even and at least 8");
    require(c.samples >= 2, "--samples must be at least 2");
    require(std::isfinite(c.lambda), "--lambda must be finite");
    if (c.subcommand == "spectrum") require(c.count >= 1, "--count must be at least 1");
    if (c.subcommand == "resolvent" && c.method == "series") {
        require(c.terms >= 1, "--method series needs --terms N with N >= 1");
    }
    if (c.subcommand == "resolvent" && c.method == "quadrature") {
        require(app.get_subcommand("resolvent")->count("--terms") == 0, "--terms only applies to --method series");
    }
    if (c.subcommand == "expand") {
        require(c.terms >= 1, "--terms must be at least 1");
        require(!c.reconstruct || *c.reconstruct >= 2, "--reconstruct must be at least 2");
    }
    if (c.subcommand == "verify") {
        require(!(c.problem && !c.fixture.empty()), "verify takes either --fixture or --problem, not both");
    }
}

}  // namespace

std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args, std::ostream& out) {
    RunConfig c;
    CLI::App app{"Two-interval Sturm-Liouville transmission problem solver", "slt"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string problem;
    std::string output;
    std::size_t grid = 0;
    app.add_option("--problem", problem, "Problem file");
    app.add_option("--grid", grid, "Override grid_steps");
    app.add_option("--output", output, "Write to this file instead of standard output");

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues as CSV or JSON");
    spectrum->add_option("--count", c.count, "Number of eigenvalues")->required();
    spectrum->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* eigen = app.add_subcommand("eigenfunction", "Normalized eigenfunction samples (x,phi)");
    eigen->add_option("--index", c.index, "Eigenpair index from 0")->required();
    eigen->add_option("--samples", c.samples, "Points per subinterval");

    auto* green = app.add_subcommand("green", "Green's function samples (x,xi,G)");
    green->add_option("--lambda", c.lambda, "Spectral parameter")->required();
    green->add_option("--samples", c.samples, "Points per subinterval");

    auto* resolvent = app.add_subcommand("resolvent", "Solve -p u'' + (q - lambda) u = f");
    resolvent->add_option("--lambda", c.lambda, "Spectral parameter")->required();
    resolvent->add_option("--f", c.f, "Right-hand side expression in x")->required();
    resolvent->add_option("--method", c.method, "quadrature or series")
        ->check(CLI::IsMember({"quadrature", "series"}));
    resolvent->add_option("--terms", c.terms, "Eigenpairs used by --method series");
    resolvent->add_option("--samples", c.samples, "Points per subinterval");

    auto* expand = app.add_subcommand("expand", "Eigenfunction expansion coefficients (n,c_n)");
    expand->add_option("--f", c.f, "Expression in x")->required();
    expand->add_option("--terms", c.terms, "Number of coefficients")->required();
    expand->add_flag("--parseval", c.parseval, "Report norm and Parseval gap");
    expand->add_option("--reconstruct", c.reconstruct, "Emit x,f,S_N at M points per subinterval");

    auto* verify = app.add_subcommand("verify", "Run the invariant suites");
    verify->add_option("--fixture", c.fixture, "c0, c1, c2 or all")->check(CLI::IsMember({"c0", "c1", "c2", "all"}));

    std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    c.subcommand = app.get_subcommands().front()->get_name();
    if (!problem.empty()) c.problem = problem;
    if (!output.empty()) c.output = output;
    if (app.count("--grid") > 0) c.grid = grid;
    if (c.subcommand == "resolvent" && c.method == "series" && resolvent->count("--terms") == 0) c.terms = 200;
    validate(c, app);
    if (c.subcommand == "expand" || c.subcommand == "resolvent") input_function(c);
    return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    int code = success;
    if (config.subcommand == "spectrum") {
        cmd_spectrum(config, buffer, err);
    } else if (config.subcommand == "eigenfunction") {
        cmd_eigenfunction(config, buffer);
    } else if (config.subcommand == "green") {
        cmd_green(config, buffer);
    } else if (config.subcommand == "resolvent") {
        cmd_resolvent(config, buffer);
    } else if (config.subcommand == "expand") {
        cmd_expand(config, buffer);
    } else if (config.subcommand == "verify") {
        code = cmd_verify(config, buffer);
    } else {
        throw UsageError(fmt::format("unknown subcommand '{}'", config.subcommand));
    }

    if (config.output) {
        std::ofstream file(*config.output, std::ios::binary);
        if (!file) throw Error(fmt::format("cannot write '{}'", config.output->string()));
        file << buffer.str();
    } else {
        out << buffer.str();
    }
    return code;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const auto config = parse_arguments(args, out);
        if (!config) return success;
        return run(*config, out, err);
    } catch (const UsageError& e) {
        fmt::print(err, "usage error: {}\n", e.what());
        return usage_error;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return computation_failure;
    }
}

}  // namespace slt::cli
