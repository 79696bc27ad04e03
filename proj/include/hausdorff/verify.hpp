#pragma once

#include <cstdint>
#include <map>

#include "hausdorff/calculus.hpp"

namespace hausdorff {

struct SuiteCheck {
    std::string name;
    double error = 0.0;      // measured error (signed margin for attainment checks)
    double tolerance = 0.0;  // pinned from the acceptance contract
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<SuiteCheck> checks;
    bool pass = false;  // conjunction of the checks

    std::string to_json() const;
};

struct SuiteConfig {
    std::uint64_t seed = 20240801;
    /// Recognized keys: "l" and "alpha" restrict boyd-power to one
    /// combination, "functions" overrides random-function counts.
    std::map<std::string, double> overrides;
};

/// Registered suites: two-route-symbol, multiplicativity, commutativity,
/// boyd-power, calderon-alpha1, frac-semigroup, norm-bound,
/// balakrishnan-pointwise, specfun-reference. Inner precondition failures
/// become failed checks rather than exceptions.
VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg = {});

std::vector<std::string> suite_names();

}  // namespace hausdorff
