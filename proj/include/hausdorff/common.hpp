#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hausdorff {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Malformed arguments, unknown names, bad files, out-of-range indices.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented numerical precondition does not hold (inadmissible kernel,
/// insufficient decay, singular matrix, ...).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-fatal findings collected while a computation runs.
struct Diagnostics {
    std::vector<std::string> warnings;
    std::uint64_t out_of_domain_evals = 0;
    double out_of_domain_mass = 0.0;  // fraction of integrand mass evaluated off-grid
    double error_estimate = 0.0;      // accumulated estimate for iterated pipelines

    void warn(std::string msg) { warnings.push_back(std::move(msg)); }
    void merge(const Diagnostics& other) {
        warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
        out_of_domain_evals += other.out_of_domain_evals;
        out_of_domain_mass += other.out_of_domain_mass;
        error_estimate += other.error_estimate;
    }
};

}  // namespace hausdorff
