#pragma once

#include "slt/model.hpp"
#include "slt/tolerances.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slt {

struct PropertyResult {
    std::string fixture;
    std::string name;
    bool passed = false;
    double value = 0.0;      ///< measured quantity (error, residual, ...)
    double threshold = 0.0;  ///< bound it was checked against
    std::string detail;
};

struct SuiteOptions {
    /// Eigenpairs used for the bilinear kernel series ladder (largest rung).
    std::size_t kernel_terms = 400;
    /// Eigenpairs used for the resolvent series comparison.
    std::size_t series_terms = 200;
    /// Fixture has q = 0 everywhere, so the small-n asymptotic checks apply.
    bool free_potential = false;
};

/// Runs the invariant checks of every solver stage on one problem.
std::vector<PropertyResult> run_property_suite(std::string_view fixture, const Problem& problem,
                                               const SuiteOptions& options = {},
                                               const Tolerances& tol = kDefaultTolerances);

/// Suite for a built-in fixture name ("c0", "c1", "c2").
std::vector<PropertyResult> run_fixture_suite(std::string_view fixture, const Tolerances& tol = kDefaultTolerances);

}  // namespace slt
