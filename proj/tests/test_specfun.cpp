#include <cmath>

#include "doctest.h"
#include "hausdorff/specfun.hpp"

using namespace hausdorff;

namespace {

// Independent series oracle for K_0: the standard ascending series
//   K_0(z) = -(log(z/2) + gamma) I_0(z) + sum_{k>=1} (z^2/4)^k / (k!)^2 H_k
// evaluated term by term; converges quickly for moderate z.
double bessel_k0_series(double z) {
    const double euler_gamma = 0.57721566490153286;
    const double q = 0.25 * z * z;
    double i0 = 1.0, term = 1.0;
    double sum = 0.0, hk = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        i0 += term;
        hk += 1.0 / static_cast<double>(k);
        sum += term * hk;
    }
    return -(std::log(0.5 * z) + euler_gamma) * i0 + sum;
}

}  // namespace

TEST_CASE("gamma: factorials and the sqrt(pi) value") {
    CHECK(gamma_real(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_real(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(std::abs(gamma_real(0.5) - std::sqrt(kPi)) < 1e-10 * std::sqrt(kPi));
    CHECK_THROWS_AS(gamma_real(0.0), UsageError);
    CHECK_THROWS_AS(gamma_real(-1.5), UsageError);
}

TEST_CASE("gamma recurrence over a fine lattice") {
    for (double x = 0.1; x < 4.95; x += 0.1) {
        const double lhs = gamma_real(x + 1.0);
        CHECK(std::abs(lhs - x * gamma_real(x)) <= 1e-12 * lhs);
    }
}

TEST_CASE("bessel k: half-integer closed form") {
    // oracle: K_{1/2}(z) = sqrt(pi/(2z)) exp(-z)
    const double want = std::sqrt(kPi / 2.0) * std::exp(-1.0);
    CHECK(std::abs(bessel_k_real(0.5, 1.0) - want) < 1e-9 * want);
    for (double z : {0.1, 0.5, 2.0, 7.5, 20.0}) {
        const double w = std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
        CHECK(std::abs(bessel_k_real(0.5, z) - w) < 1e-9 * w);
    }
}

TEST_CASE("bessel k: even in the order") {
    CHECK(bessel_k_real(-0.3, 2.0) == bessel_k_real(0.3, 2.0));
}

TEST_CASE("bessel k0 against the series oracle") {
    CHECK(std::abs(bessel_k_real(0.0, 1.0) - bessel_k0_series(1.0)) < 1e-8);
    CHECK(bessel_k_real(0.0, 1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-8));
    CHECK(std::abs(bessel_k_real(0.0, 0.5) - bessel_k0_series(0.5)) < 1e-8);
}

TEST_CASE("bessel k: positivity and monotone decay in z") {
    for (double nu : {0.0, 0.7, 1.5, 3.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double z = 0.2; z < 10.0; z += 0.4) {
            const double v = bessel_k_real(nu, z);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("bessel k: recurrence over a (nu, z) lattice") {
    for (double nu = 0.25; nu <= 2.01; nu += 0.25) {
        for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double lhs = bessel_k_real(nu + 1.0, z);
            const double rhs = bessel_k_real(nu - 1.0, z) + (2.0 * nu / z) * bessel_k_real(nu, z);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * lhs);
        }
    }
}

TEST_CASE("bessel k rejects non-positive arguments") {
    CHECK_THROWS_AS(bessel_k_real(0.5, 0.0), UsageError);
    CHECK_THROWS_AS(bessel_k_real(0.5, -1.0), UsageError);
    SpecFunConfig bad;
    bad.bessel_nodes = 1;
    CHECK_THROWS_AS(bessel_k_real(0.5, 1.0, bad), UsageError);
}
