#include <cmath>

#include "doctest.h"
#include "hausdorff/symbol.hpp"

using namespace hausdorff;

TEST_CASE("averaging symbol equals 1/((1/2) - i s)") {
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid s_grid = Grid::line(-20.0, 20.0, 801);
    const SampledFunction phi = scalar_symbol(op, s_grid);
    CHECK(std::abs(phi.values[400] - Complex(2.0)) < 1e-6);  // s = 0
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        const double s = s_grid.axes[0].coord(i);
        worst = std::max(worst, std::abs(phi.values[i] - 1.0 / Complex(0.5, -s)));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("harmonic-mean symbol at the origin is 4") {
    const OperatorSpec op = make_operator(make_preset("calderon"));
    const SampledFunction phi = scalar_symbol(op, Grid::line(-1.0, 1.0, 3));
    CHECK(std::abs(phi.values[1] - Complex(4.0)) < 1e-6);
}

TEST_CASE("zero kernel has the zero symbol") {
    const Preset p = make_preset("cesaro");
    const OperatorSpec op =
        make_operator(KernelSpec::from_expression("0", 1, Support::positive()), p.family);
    CHECK(max_abs(scalar_symbol(op, Grid::line(-5.0, 5.0, 11))) == 0.0);
}

TEST_CASE("scalar symbol requires a positive definite family") {
    const OperatorSpec op = make_operator(make_preset("negbox"));
    CHECK_THROWS_AS(scalar_symbol(op, Grid::line(-5.0, 5.0, 11)), NumericError);
}

TEST_CASE("the two symbol routes agree on the averaging preset") {
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid s_grid = Grid::line(-20.0, 20.0, 401);
    SymbolSettings st;
    st.t_count = 180001;
    st.direct_step = 2.0 * st.t_half_width / static_cast<double>(st.t_count - 1);
    const SampledFunction a = scalar_symbol(op, s_grid, SymbolMethod::LogFourier, st);
    const SampledFunction d = scalar_symbol(op, s_grid, SymbolMethod::Direct, st);
    CHECK(rel_linf(d, a) < 1e-6);
}

TEST_CASE("matrix symbol of a positive-support kernel is diagonal") {
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid s_grid = Grid::line(-10.0, 10.0, 401);
    const SymbolMatrix m = matrix_symbol(op, s_grid);
    CHECK(m.size == 2);
    CHECK(std::abs(m.at(1, 1).values[200] - Complex(2.0)) < 1e-6);
    CHECK(max_abs(m.at(1, 2)) <= 1e-10);
    CHECK(max_abs(m.at(2, 1)) <= 1e-10);
    // positive-definite reduction: diagonal equals the scalar symbol
    const SampledFunction phi = scalar_symbol(op, s_grid);
    CHECK(distance_linf(m.at(1, 1), phi) <= 1e-10);
    CHECK(distance_linf(m.at(2, 2), phi) <= 1e-10);
}

TEST_CASE("matrix symbol of the negative-support preset is off-diagonal") {
    const OperatorSpec op = make_operator(make_preset("negbox"));
    const Grid s_grid = Grid::line(-10.0, 10.0, 401);
    const SymbolMatrix m = matrix_symbol(op, s_grid);
    CHECK(max_abs(m.at(1, 1)) <= 1e-10);
    CHECK(max_abs(m.at(2, 2)) <= 1e-10);
    // oracle: integral_0^1 v^(-1/2) dv = 2 at s = 0
    CHECK(std::abs(m.at(1, 2).values[200] - Complex(2.0)) < 1e-6);
    // symmetry is exact: the same quadrature, the same data
    CHECK(distance_linf(m.at(1, 2), m.at(2, 1)) == 0.0);
}

TEST_CASE("matrix symbol errors when a populated pair has no map") {
    const Preset p = make_preset("negbox");
    auto fam = std::make_shared<MatrixFamily>(*p.family);
    fam->pair_maps.erase({1, 2});
    fam->pair_maps.erase({2, 1});
    const OperatorSpec op = make_operator(p.kernel, fam);
    CHECK_THROWS_AS(matrix_symbol(op, Grid::line(-5.0, 5.0, 11)), NumericError);
}

TEST_CASE("zero kernel gives the zero matrix symbol") {
    const Preset p = make_preset("negbox");
    const OperatorSpec op =
        make_operator(KernelSpec::from_expression("0", 1, Support::full()), p.family);
    const SymbolMatrix m = matrix_symbol(op, Grid::line(-5.0, 5.0, 11));
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) CHECK(max_abs(m.at(i, j)) == 0.0);
}

TEST_CASE("direct membership route agrees with the log route") {
    const Preset p = make_preset("negbox");
    QuadratureSettings quad;
    quad.uniform_step = 2e-5;  // the integrand has an integrable endpoint singularity
    const OperatorSpec op = make_operator(p.kernel, p.family, quad);
    const Grid s_grid = Grid::line(-2.0, 2.0, 5);
    const SymbolMatrix direct = matrix_symbol_direct(op, s_grid);
    const SymbolMatrix log_route = matrix_symbol(op, s_grid);
    CHECK(distance_linf(direct.at(1, 2), log_route.at(1, 2)) < 5e-3);
    CHECK(max_abs(direct.at(1, 1)) == 0.0);
}

TEST_CASE("symbol norm: scalar and diagonal cases") {
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const Grid s_grid = Grid::line(-20.0, 20.0, 2001);
    const double norm_scalar = symbol_norm(SymbolMatrix::scalar(scalar_symbol(op, s_grid)));
    CHECK(std::abs(norm_scalar - 2.0) < 1e-6);  // sup |1/(1/2 - i s)| at s = 0
    const double norm_matrix = symbol_norm(matrix_symbol(op, s_grid));
    CHECK(std::abs(norm_matrix - 2.0) < 1e-6);

    const OperatorSpec cal = make_operator(make_preset("calderon"));
    const double norm_cal = symbol_norm(SymbolMatrix::scalar(scalar_symbol(cal, s_grid)));
    CHECK(std::abs(norm_cal - 4.0) < 1e-6);
}

TEST_CASE("symbol norm of the zero matrix is zero") {
    SymbolMatrix m;
    m.n = 1;
    m.size = 2;
    m.s_grid = Grid::line(-1.0, 1.0, 5);
    m.entries.assign(4, SampledFunction(m.s_grid));
    CHECK(symbol_norm(m) == 0.0);
}

TEST_CASE("largest singular value on frozen 2x2 data") {
    // oracle: off-diagonal nilpotent [[0,2],[0,0]] has largest singular value 2;
    // hermitian [[2,i],[-i,2]] has eigenvalues {1,3}
    const Grid g = Grid::line(-1.0, 1.0, 2);
    SymbolMatrix m;
    m.n = 1;
    m.size = 2;
    m.s_grid = g;
    m.entries.assign(4, SampledFunction(g));
    m.at(1, 2).values[0] = Complex(2.0);
    CHECK(symbol_norm(m) == doctest::Approx(2.0).epsilon(1e-12));

    SymbolMatrix h;
    h.n = 1;
    h.size = 2;
    h.s_grid = g;
    h.entries.assign(4, SampledFunction(g));
    h.at(1, 1).values[0] = Complex(2.0);
    h.at(2, 2).values[0] = Complex(2.0);
    h.at(1, 2).values[0] = Complex(0.0, 1.0);
    h.at(2, 1).values[0] = Complex(0.0, -1.0);
    CHECK(symbol_norm(h) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("spectrum of the harmonic-mean operator is [0, 4]") {
    const OperatorSpec op = make_operator(make_preset("calderon"));
    const SampledFunction phi = scalar_symbol(op, Grid::line(-60.0, 60.0, 4001));
    const SpectrumEstimate est = spectrum_estimate(phi);
    CHECK(est.real_nonnegative);
    CHECK(est.hull_min == 0.0);
    CHECK(std::abs(est.hull_max - 4.0) < 1e-6);
    CHECK(est.warnings.empty());
}

TEST_CASE("spectrum of the zero operator is {0}") {
    const SampledFunction zero(Grid::line(-10.0, 10.0, 101));
    const SpectrumEstimate est = spectrum_estimate(zero);
    CHECK(est.real_nonnegative);
    CHECK(est.hull_min == 0.0);
    CHECK(est.hull_max == 0.0);
    for (const Complex& v : est.points) CHECK(v == Complex(0.0));
}

TEST_CASE("averaging symbol range lies on the circle |z - 1| = 1") {
    // algebraic oracle: |1/(1/2 - i s) - 1| = 1 for every s
    const OperatorSpec op = make_operator(make_preset("cesaro"));
    const SampledFunction phi = scalar_symbol(op, Grid::line(-20.0, 20.0, 801));
    const SpectrumEstimate est = spectrum_estimate(phi);
    CHECK_FALSE(est.real_nonnegative);
    double worst = 0.0;
    for (const Complex& z : est.points)
        worst = std::max(worst, std::abs(std::abs(z - Complex(1.0)) - 1.0));
    CHECK(worst < 1e-6);
}

TEST_CASE("insufficient boundary decay is flagged") {
    const OperatorSpec op = make_operator(make_preset("calderon"));
    const SampledFunction phi = scalar_symbol(op, Grid::line(-2.0, 2.0, 101));
    const SpectrumEstimate est = spectrum_estimate(phi);
    REQUIRE(est.warnings.size() == 1);
    CHECK(est.warnings[0].find("decay") != std::string::npos);
}

TEST_CASE("2-d matrix symbol: all sixteen entries, symmetric") {
    QuadratureSettings quad;
    quad.uniform_half_width = 4.5;
    quad.uniform_step = 0.05;
    const OperatorSpec op = make_operator(make_preset("dilation-diag-2d"), quad);
    const Axis s_ax(-5.0, 5.0, 11);
    SymbolSettings st;
    st.t2_count = 81;
    const SymbolMatrix m = matrix_symbol(op, Grid::plane(s_ax, s_ax), st);
    CHECK(m.size == 4);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            CHECK(m.at(i, j).values.size() == 121);
            CHECK(std::isfinite(max_abs(m.at(i, j))));
            CHECK(max_abs(m.at(i, j)) > 0.0);
            CHECK(distance_linf(m.at(i, j), m.at(j, i)) == 0.0);
        }
    }
    // the gaussian kernel is even per axis, so every region integral matches
    // the all-positive one at s = 0
    const Complex base = m.at(1, 1).values[60];
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            CHECK(std::abs(m.at(i, j).values[60] - base) < 1e-8);
}
