#pragma once

#include <cstddef>

#include "hausdorff/common.hpp"

namespace hausdorff {

struct SpecFunConfig {
    std::size_t bessel_nodes = 2000;  // quadrature nodes for the cosh integral
    double bessel_truncation = 40.0;  // upper limit T_b of the cosh integral

    void validate() const {
        if (bessel_nodes < 2 || bessel_truncation <= 0.0)
            throw UsageError("specfun: node count and truncation must be positive");
    }
};

/// Gamma function for x > 0, Lanczos rational approximation (g = 7, nine
/// coefficients, Godfrey's tabulation), relative accuracy well below 1e-12
/// throughout (0, 171).
double gamma_real(double x);

/// Modified Bessel function of the second kind K_nu(z) for real order and
/// z > 0, via the integral of exp(-z cosh t) cosh(nu t) over (0, T_b).
/// Intended range |nu| <= 5, z >= 0.05 at >= 1e-9 relative accuracy.
double bessel_k_real(double nu, double z, const SpecFunConfig& cfg = {});

}  // namespace hausdorff
