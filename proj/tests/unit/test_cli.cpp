#include "slt_cli/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kFixtures = SLT_FIXTURE_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "slt");
    std::ostringstream out;
    std::ostringstream err;
    const int code = slt::cli::run_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("spectrum as CSV and JSON") {
    const auto csv = run({"spectrum", "--problem", kFixtures + "/c0.toml", "--count", "4"});
    CHECK(csv.code == 0);
    CHECK(csv.err.empty());
    CHECK(csv.out.rfind("n,lambda,s,norm_constant\n0,0.25", 0) == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    const double expected[] = {0.25, 1.0, 2.25, 4.0};
    for (double e : expected) {
        REQUIRE(std::getline(lines, line));
        const double lambda = std::stod(line.substr(line.find(',') + 1));
        CHECK(lambda == doctest::Approx(e).epsilon(1e-6));
    }

    const auto json = run({"spectrum", "--problem", kFixtures + "/c0.toml", "--count", "2", "--format", "json"});
    CHECK(json.code == 0);
    CHECK(json.out.find("\"eigenvalues\"") != std::string::npos);
}

TEST_CASE("verify on one fixture passes") {
    const auto r = run({"verify", "--fixture", "c0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS c0 kernel_symmetry") != std::string::npos);
}

TEST_CASE("resolvent at an eigenvalue is a computation failure") {
    const auto r = run({"resolvent", "--problem", kFixtures + "/c0.toml", "--lambda", "0.25", "--f", "1"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("lambda is within tolerance of an eigenvalue") != std::string::npos);
}

TEST_CASE("resolvent output") {
    const auto r = run({"resolvent", "--problem", kFixtures + "/c0.toml", "--lambda", "0", "--f", "1", "--samples", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x,u\n-3.14159265358979,0\n", 0) == 0);
    CHECK(r.out.find("\n-0,4.934802") != std::string::npos);
    CHECK(r.out.find("\n0,4.934802") != std::string::npos);
    CHECK(r.out.find("# max_residual=") != std::string::npos);

    const auto s = run({"resolvent", "--problem", kFixtures + "/c0.toml", "--lambda", "10.3", "--f", "pi^2-x^2",
                        "--method", "series", "--terms", "50", "--samples", "3"});
    CHECK(s.code == 0);
}

TEST_CASE("expand output") {
    const auto r = run({"expand", "--problem", kFixtures + "/c1.toml", "--f", "x/abs(x)", "--terms", "5", "--parseval",
                        "--reconstruct", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,c_n\n0,", 0) == 0);
    CHECK(r.out.find("expected_convergence=mean-square") != std::string::npos);
    CHECK(r.out.find("# norm2=") != std::string::npos);
    CHECK(r.out.find("parseval_gap=") != std::string::npos);
    CHECK(r.out.find("# reconstruction\nx,f,S_N\n") != std::string::npos);
}

TEST_CASE("eigenfunction and green output") {
    const auto e = run({"eigenfunction", "--problem", kFixtures + "/c0.toml", "--index", "1", "--samples", "5"});
    CHECK(e.code == 0);
    CHECK(e.out.find("x,phi\n") != std::string::npos);
    const auto g = run({"green", "--problem", kFixtures + "/c0.toml", "--lambda", "0", "--samples", "2"});
    CHECK(g.code == 0);
    CHECK(g.out.find("\n-0,-0,-1.5707963267") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"spectrum", "--count", "3"}).code == 2);
    CHECK(run({"spectrum", "--problem", kFixtures + "/c0.toml"}).code == 2);
    CHECK(run({"spectrum", "--problem", kFixtures + "/c0.toml", "--count", "0"}).code == 2);
    CHECK(run({"spectrum", "--problem", kFixtures + "/c0.toml", "--count", "3", "--format", "xml"}).code == 2);
    CHECK(run({"spectrum", "--problem", kFixtures + "/c0.toml", "--count", "3", "--grid", "101"}).code == 2);
    CHECK(run({"green", "--problem", kFixtures + "/c0.toml", "--lambda", "abc"}).code == 2);
    CHECK(run({"resolvent", "--problem", kFixtures + "/c0.toml", "--lambda", "1.1", "--f", "1+"}).code == 2);
    CHECK(run({"verify", "--fixture", "c9"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("problem file errors are reported") {
    const auto degenerate = run({"spectrum", "--problem", kFixtures + "/degenerate.toml", "--count", "3"});
    CHECK(degenerate.code == 2);
    CHECK(degenerate.err.find("Delta12=0") != std::string::npos);

    const auto path = temp_file("slt_missing_p1.toml",
                                "p2 = 1\nalpha = 0\nbeta = 0\nq_left = \"0\"\nq_right = \"0\"\n"
                                "t_matrix = [[1, 0, -1, 0], [0, 1, 0, -1]]\n");
    const auto missing = run({"spectrum", "--problem", path.string(), "--count", "3"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("'p1'") != std::string::npos);
    std::filesystem::remove(path);

    CHECK(run({"spectrum", "--problem", kFixtures + "/nope.toml", "--count", "3"}).code == 2);
}

TEST_CASE("output file and determinism") {
    const auto path = std::filesystem::temp_directory_path() / "slt_cli_output.csv";
    const std::vector<std::string> args{"expand", "--problem", kFixtures + "/c2.toml", "--f", "cos(x)", "--terms", "12",
                                        "--parseval", "--output", path.string()};
    const auto first = run(args);
    CHECK(first.code == 0);
    CHECK(first.out.empty());
    std::stringstream a;
    a << std::ifstream(path).rdbuf();
    run(args);
    std::stringstream b;
    b << std::ifstream(path).rdbuf();
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("n,c_n\n", 0) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("help exits cleanly") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("spectrum") != std::string::npos);
}
