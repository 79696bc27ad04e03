#include "hausdorff/specfun.hpp"

#include <cmath>

namespace hausdorff {

namespace {

// Lanczos coefficients, g = 7 (Godfrey).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

double gamma_positive(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
    const double base = z + kLanczosG + 0.5;
    return std::sqrt(kTwoPi) * std::pow(base, z + 0.5) * std::exp(-base) * acc;
}

}  // namespace

double gamma_real(double x) {
    if (!(x > 0.0)) throw UsageError("gamma_real: argument must be positive");
    if (x >= 171.7) throw UsageError("gamma_real: argument too large for double range");
    if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
    return gamma_positive(x);
}

double bessel_k_real(double nu, double z, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!(z > 0.0)) throw UsageError("bessel_k_real: argument must be positive");
    nu = std::abs(nu);  // K_{-nu} = K_nu
    if (nu > 6.0) throw UsageError("bessel_k_real: order out of supported range");

    // Trapezoid on [0, T]; the integrand is even around 0 with vanishing
    // derivative there and decays double-exponentially, so the rule converges
    // far faster than its generic order.
    const std::size_t n = cfg.bessel_nodes;
    const double h = cfg.bessel_truncation / static_cast<double>(n - 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = h * static_cast<double>(k);
        const double a = nu * t;
        // log cosh(a), overflow-safe
        const double logcosh = std::abs(a) + std::log1p(std::exp(-2.0 * std::abs(a))) -
                               0.6931471805599453094;
        const double log_term = -z * std::cosh(t) + logcosh;
        if (log_term < -745.0) break;  // below double underflow, tail is gone
        const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += w * std::exp(log_term);
    }
    return h * acc;
}

}  // namespace hausdorff
