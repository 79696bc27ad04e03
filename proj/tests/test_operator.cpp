#include <cmath>

#include "doctest.h"
#include "hausdorff/operator.hpp"

using namespace hausdorff;

namespace {

SampledFunction gaussian(const Grid& g, double c, double w) {
    return SampledFunction::sample(g, [&](std::span<const double> x) {
        double e = 0.0;
        for (double xv : x) e += 0.5 * (xv - c) * (xv - c) / (w * w);
        return Complex(std::exp(-e));
    });
}

}  // namespace

TEST_CASE("averaging operator on the identity function") {
    // oracle: integral_0^1 u x du = x/2
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid x_grid = Grid::line(0.0, 10.0, 2001);
    const SampledFunction f =
        SampledFunction::sample(x_grid, [](std::span<const double> x) { return Complex(x[0]); });
    const SampledFunction g = apply(op, f, x_grid);
    const std::size_t at_2 = 400;  // x = 2 exactly
    CHECK(x_grid.axes[0].coord(at_2) == 2.0);
    CHECK(std::abs(g.values[at_2] - Complex(1.0)) < 1e-4);
}

TEST_CASE("zero kernel maps everything to zero") {
    const Preset p = make_preset("cesaro");
    const OperatorSpec op =
        make_operator(KernelSpec::from_expression("0", 1, Support::positive()), p.family);
    const Grid x_grid = Grid::line(0.01, 10.0, 501);
    CHECK(max_abs(apply(op, gaussian(x_grid, 3.0, 1.0), x_grid)) == 0.0);
}

TEST_CASE("harmonic-mean operator on the unit box") {
    // oracle: (1/x) int_0^x chi_(0,1) + int_x^inf chi_(0,1)(u)/u du
    //       = 1 + log(1/x) at x = 0.5 -> 1 + log 2
    QuadratureSettings quad;
    quad.log_step = 1e-3;  // the sampled indicator has jumps; first-order there
    const OperatorSpec op = make_operator(make_preset("calderon"), quad);
    const Grid f_grid = Grid::line(1e-6, 1e6, 24001, true);  // node exactly at u = 1
    const SampledFunction f = SampledFunction::sample(f_grid, [](std::span<const double> x) {
        return Complex(x[0] > 0.0 && x[0] < 1.0 ? 1.0 : (x[0] == 1.0 ? 0.5 : 0.0));
    });
    const Grid x_grid = Grid::line(0.3, 0.7, 41);  // node exactly at x = 0.5
    const SampledFunction g = apply(op, f, x_grid);
    CHECK(x_grid.axes[0].coord(20) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(g.values[20] - Complex(1.0 + std::log(2.0))) < 1e-3);
}

TEST_CASE("application is linear") {
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid x_grid = Grid::line(0.005, 30.0, 1201);
    const SampledFunction f = gaussian(x_grid, 4.0, 0.8);
    const SampledFunction g = gaussian(x_grid, 7.0, 1.5);
    const Complex a(1.7, -0.3), b(-0.4, 0.9);
    const SampledFunction lhs = apply(op, a * f + b * g, x_grid);
    const SampledFunction rhs = a * apply(op, f, x_grid) + b * apply(op, g, x_grid);
    CHECK(rel_linf(lhs, rhs) < 1e-10);
}

TEST_CASE("apply_iterated: l = 1 is apply, l = 2 halves twice") {
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid x_grid = Grid::line(0.0, 10.0, 2001);
    const SampledFunction f =
        SampledFunction::sample(x_grid, [](std::span<const double> x) { return Complex(x[0]); });
    const SampledFunction once = apply_iterated(op, 1, f, x_grid);
    CHECK(rel_linf(once, apply(op, f, x_grid)) == 0.0);
    // oracle: (x/2)/2 = x/4 -> 0.5 at x = 2
    Diagnostics diag;
    const SampledFunction twice = apply_iterated(op, 2, f, x_grid, &diag);
    const std::size_t at_2 = 400;
    CHECK(std::abs(twice.values[at_2] - Complex(0.5)) < 1e-3);
    CHECK(diag.error_estimate >= 0.0);
    CHECK(diag.error_estimate < 0.01);  // accumulated truncation estimate
    CHECK_THROWS_AS(apply_iterated(op, 0, f, x_grid), UsageError);
}

TEST_CASE("inadmissible kernels cannot form operators") {
    const Preset p = make_preset("cesaro");
    const KernelSpec bad =
        KernelSpec::from_expression("chi(0,1)(u) * u^(-1)", 1, Support::box1(0.0, 1.0));
    CHECK_THROWS_AS(make_operator(bad, p.family), NumericError);
}

TEST_CASE("out-of-domain mass above 10 percent raises") {
    // constant-like f sampled on a narrow window: almost all of the
    // integrand mass of the average falls outside the grid at large x
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid f_grid = Grid::line(0.9, 1.1, 51);
    const SampledFunction f =
        SampledFunction::sample(f_grid, [](std::span<const double>) { return Complex(1.0); });
    const Grid x_grid = Grid::line(5.0, 20.0, 51);
    Diagnostics diag;
    CHECK_THROWS_AS(apply(op, f, x_grid, &diag), NumericError);
}

TEST_CASE("out-of-domain mass is reported but tolerated when small") {
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid x_grid = Grid::line(0.005, 30.0, 1201);
    const SampledFunction f = gaussian(x_grid, 5.0, 1.0);
    Diagnostics diag;
    const SampledFunction g = apply(op, f, x_grid, &diag);
    CHECK(max_abs(g) > 0.0);
    CHECK(diag.out_of_domain_mass < 0.01);
}

TEST_CASE("2-d application factorizes for separable data") {
    // oracle: K and f separable => (H f)(x) = g(x1) g(x2) with the 1-d factor
    // g(y) = integral e^{-v^2} f1(v y) dv, computed here by direct quadrature
    const Preset p = make_preset("dilation-diag-2d");
    QuadratureSettings quad;
    quad.uniform_half_width = 4.5;
    quad.uniform_step = 0.05;
    const OperatorSpec op = make_operator(p, quad);
    const Axis f_ax(-25.0, 25.0, 501);
    const Grid f_grid = Grid::plane(f_ax, f_ax);
    const double w = 2.0;
    const SampledFunction f = SampledFunction::sample(f_grid, [&](std::span<const double> x) {
        return Complex(std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]) / (w * w)));
    });
    const Axis x_ax(-2.0, 2.0, 21);
    const Grid x_grid = Grid::plane(x_ax, x_ax);
    const SampledFunction g = apply(op, f, x_grid);

    auto factor = [&](double y) {
        double acc = 0.0;
        const double h = 1e-3;
        for (double v = -4.5 + 0.5 * h; v < 4.5; v += h)
            acc += std::exp(-v * v) * std::exp(-0.5 * (v * y) * (v * y) / (w * w)) * h;
        return acc;
    };
    double worst = 0.0;
    for (std::size_t j = 0; j < 21; j += 5) {
        for (std::size_t i = 0; i < 21; i += 5) {
            const double want = factor(x_ax.coord(i)) * factor(x_ax.coord(j));
            worst = std::max(worst, std::abs(g.at(i, j).real() - want));
        }
    }
    CHECK(worst < 5e-3);
}

TEST_CASE("conjugated families transform the argument correctly") {
    // family with rotation conjugator; oracle computed directly in the test
    auto fam = std::make_shared<MatrixFamily>(*make_preset("dilation-diag-2d").family);
    const double th = 0.5;
    fam->conjugator = {{{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}}};
    fam->validate();
    const double u[2] = {0.7, -1.3};
    const double x[2] = {1.1, 0.4};
    double out[2];
    fam->apply_matrix(std::span<const double>(u, 2), std::span<const double>(x, 2), out);
    // oracle: C diag(u) C^T x assembled by hand
    const double c = std::cos(th), s = std::sin(th);
    const double y0 = c * x[0] + s * x[1];
    const double y1 = -s * x[0] + c * x[1];
    const double z0 = u[0] * y0, z1 = u[1] * y1;
    CHECK(out[0] == doctest::Approx(c * z0 - s * z1).epsilon(1e-14));
    CHECK(out[1] == doctest::Approx(s * z0 + c * z1).epsilon(1e-14));
}

TEST_CASE("negative-support preset applies on the full line") {
    // oracle: (H f)(x) = integral_{-1}^{0} f(u x) du; for f(x) = x it is -x/2
    const OperatorSpec op = make_operator(make_preset("negbox"));
    const Grid x_grid = Grid::line(-10.0, 10.0, 2001);
    const SampledFunction f =
        SampledFunction::sample(x_grid, [](std::span<const double> x) { return Complex(x[0]); });
    const SampledFunction g = apply(op, f, x_grid);
    const std::size_t at = 1700;  // x = 7
    CHECK(x_grid.axes[0].coord(at) == doctest::Approx(7.0));
    CHECK(std::abs(g.values[at] - Complex(-3.5)) < 1e-3);
}
