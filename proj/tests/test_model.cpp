#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"
#include "hausdorff/model.hpp"

using namespace hausdorff;

TEST_CASE("octant signatures: examples and involution properties") {
    CHECK(octant_signature(1, 1, 1) == SignVec{1, 1});
    CHECK(octant_signature(1, 2, 1) == SignVec{-1, 1});
    CHECK(octant_signature(2, 3, 2) == SignVec{-1, -1});
    CHECK_THROWS_AS(octant_signature(0, 1, 1), UsageError);
    CHECK_THROWS_AS(octant_signature(1, 5, 2), UsageError);

    for (int n = 1; n <= 2; ++n) {
        const int m = octant_count(n);
        for (int i = 1; i <= m; ++i) {
            CHECK(octant_signature(i, i, n) == SignVec{1, 1});
            for (int j = 1; j <= m; ++j) {
                const SignVec eps = octant_signature(i, j, n);
                CHECK(eps == octant_signature(j, i, n));
                // applying eps to octant j recovers octant i
                SignVec sj = octant_signs(j, n);
                SignVec mapped{eps[0] * sj[0], eps[1] * sj[1]};
                CHECK(octant_from_signs(mapped, n) == i);
            }
        }
    }
}

TEST_CASE("omega membership on the line") {
    const Preset p = make_preset("negbox");  // family a(u) = u over the full line
    const double up = 0.5, um = -0.5, uz = 0.0;
    CHECK(omega_membership(std::span<const double>(&up, 1), 1, 1, *p.family));
    CHECK_FALSE(omega_membership(std::span<const double>(&um, 1), 1, 1, *p.family));
    CHECK(omega_membership(std::span<const double>(&um, 1), 1, 2, *p.family));
    CHECK_THROWS_AS(omega_membership(std::span<const double>(&uz, 1), 1, 1, *p.family),
                    NumericError);
}

TEST_CASE("omega regions partition the plane for fixed i") {
    const Preset p = make_preset("dilation-diag-2d");
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        double u[2] = {dist(rng), dist(rng)};
        if (u[0] == 0.0 || u[1] == 0.0) continue;
        for (int i = 1; i <= 4; ++i) {
            int hits = 0;
            for (int j = 1; j <= 4; ++j)
                hits += omega_membership(std::span<const double>(u, 2), i, j, *p.family) ? 1 : 0;
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("log-coordinate kernel of the averaging preset") {
    // substitute b(t)=e^t, J=e^t into K(b) exp(-t/2) |J|: L(t) = e^{t/2} on t<0
    const Preset p = make_preset("cesaro");
    const Grid t_grid = Grid::line(-8.0, 2.0, 1001);
    const SampledFunction l = to_log_coordinates(p.kernel, *p.family, 1, 1, t_grid);
    const std::size_t at = 600;  // t = -2
    CHECK(t_grid.axes[0].coord(at) == doctest::Approx(-2.0));
    CHECK(l.values[at].real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    const std::size_t pos = 900;  // t = 1 -> outside the support
    CHECK(l.values[pos].real() == 0.0);
}

TEST_CASE("log-coordinate kernel of the harmonic-mean preset, both branches") {
    // oracle by piecewise algebra: L(t) = exp(-|t|/2)
    const Preset p = make_preset("calderon");
    const Grid t_grid = Grid::line(-6.0, 6.0, 1201);
    const SampledFunction l = to_log_coordinates(p.kernel, *p.family, 1, 1, t_grid);
    for (double t : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
        const std::size_t i =
            static_cast<std::size_t>(std::lround((t + 6.0) / t_grid.axes[0].param_step()));
        CHECK(l.values[i].real() ==
              doctest::Approx(std::exp(-0.5 * std::abs(t))).epsilon(1e-12));
    }
}

TEST_CASE("zero kernel maps to the zero log-kernel") {
    const Preset p = make_preset("cesaro");
    const KernelSpec zero = KernelSpec::from_expression("0", 1, Support::positive());
    const SampledFunction l = to_log_coordinates(zero, *p.family, 1, 1, Grid::line(-5, 5, 101));
    CHECK(max_abs(l) == 0.0);
}

TEST_CASE("to_log_coordinates requires a registered pair map") {
    const Preset p = make_preset("cesaro");  // positive definite: only the + region
    // force a non-positive-definite family without the (1,2) map
    MatrixFamily fam = *p.family;
    fam.positive_definite = false;
    fam.pair_maps.erase({1, 2});
    CHECK_THROWS_AS(to_log_coordinates(p.kernel, fam, 1, 2, Grid::line(-5, 5, 101)),
                    NumericError);
}

TEST_CASE("from_log_coordinates recovers the harmonic-mean kernel") {
    const Preset p = make_preset("calderon");
    const Grid t_grid = Grid::line(-30.0, 30.0, 12001);
    SampledFunction q = SampledFunction::sample(t_grid, [](std::span<const double> t) {
        return Complex(std::exp(-0.5 * std::abs(t[0])));
    });
    const KernelSpec k = from_log_coordinates(std::move(q), p.family);
    const double u2 = 2.0, u05 = 0.5;
    CHECK(k.eval(std::span<const double>(&u2, 1)) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(k.eval(std::span<const double>(&u05, 1)) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(from_log_coordinates(SampledFunction(Grid::line(-1, 1, 11)),
                                         make_preset("negbox").family),
                    NumericError);
}

TEST_CASE("log-coordinate roundtrip is the identity on the grid") {
    const Preset p = make_preset("cesaro");
    const Grid t_grid = Grid::line(-20.0, 5.0, 2501);
    const SampledFunction l = to_log_coordinates(p.kernel, *p.family, 1, 1, t_grid);
    const KernelSpec back = from_log_coordinates(l, p.family);
    const SampledFunction l2 = to_log_coordinates(back, *p.family, 1, 1, t_grid);
    CHECK(distance_linf(l2, l) <= 1e-12 * std::max(1.0, max_abs(l)));
}

TEST_CASE("second-power kernel comes back from its log form") {
    // Q_2(t) = |t| e^{t/2} on t<0 resynthesizes to log(1/u) on (0,1)
    const Preset p = make_preset("cesaro");
    const Grid t_grid = Grid::line(-30.0, 30.0, 12001);
    SampledFunction q2 = SampledFunction::sample(t_grid, [](std::span<const double> t) {
        return Complex(t[0] < 0.0 ? -t[0] * std::exp(0.5 * t[0]) : 0.0);
    });
    const KernelSpec k2 = from_log_coordinates(std::move(q2), p.family);
    const double u = std::exp(-1.0);
    CHECK(k2.eval(std::span<const double>(&u, 1)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("inverse-map consistency |a(b(t))| = exp(t) for every preset") {
    for (const std::string name : {"cesaro", "calderon", "dilation-diag-2d", "negbox"}) {
        const Preset p = make_preset(name);
        CHECK_NOTHROW(p.family->validate());
        double t[2], b[2], ev[2];
        for (const auto& [pair, maps] : p.family->pair_maps) {
            for (double t0 = -8.0; t0 <= 8.0; t0 += 0.5) {
                t[0] = t0;
                t[1] = 0.5 * t0;
                expr::Env env;
                env.t = t;
                env.n = p.family->n;
                for (int k = 0; k < p.family->n; ++k) b[k] = expr::eval(*maps.b[k], env);
                p.family->eigenvalues(
                    std::span<const double>(b, static_cast<std::size_t>(p.family->n)), ev);
                for (int k = 0; k < p.family->n; ++k)
                    CHECK(std::abs(std::abs(ev[k]) - std::exp(t[k])) <= 1e-10 * std::exp(t[k]));
            }
        }
    }
}

TEST_CASE("family validation rejects a non-orthogonal conjugator") {
    MatrixFamily fam = *make_preset("dilation-diag-2d").family;
    fam.conjugator = {{{1.0, 0.2}, {0.0, 1.0}}};
    CHECK_THROWS_AS(fam.validate(), NumericError);
    const double c = std::cos(0.5), s = std::sin(0.5);
    fam.conjugator = {{{c, -s}, {s, c}}};
    CHECK_NOTHROW(fam.validate());
}

TEST_CASE("admissibility: averaging preset bound is 2") {
    // oracle: integral_0^1 u^(-1/2) du = 2
    const Preset p = make_preset("cesaro");
    const AdmissibilityReport rep = admissibility_check(p.kernel, *p.family);
    CHECK(rep.admissible);
    CHECK(std::abs(rep.bound - 2.0) < 1e-6);
    CHECK(rep.tail_ratio < 1e-3);
}

TEST_CASE("admissibility: divergent kernel is rejected") {
    // integral u^(-3/2) du diverges at 0; detected by growing window increments
    const Preset p = make_preset("cesaro");
    const KernelSpec k =
        KernelSpec::from_expression("chi(0,1)(u) * u^(-1)", 1, Support::box1(0.0, 1.0));
    const AdmissibilityReport rep = admissibility_check(k, *p.family);
    CHECK_FALSE(rep.admissible);
}

TEST_CASE("admissibility: evaluation failure is an error") {
    // log of a negative argument poisons the integrand
    const Preset p = make_preset("cesaro");
    const KernelSpec bad =
        KernelSpec::from_expression("chi(0,1)(u) * log(u - 2)", 1, Support::box1(0.0, 1.0));
    CHECK_THROWS_AS(admissibility_check(bad, *p.family), NumericError);
}

TEST_CASE("admissibility: zero kernel is admissible with zero bound") {
    const Preset p = make_preset("cesaro");
    const KernelSpec k = KernelSpec::from_expression("0", 1, Support::positive());
    const AdmissibilityReport rep = admissibility_check(k, *p.family);
    CHECK(rep.admissible);
    CHECK(rep.bound == 0.0);
}

TEST_CASE("admissibility: 2-d gaussian preset") {
    const Preset p = make_preset("dilation-diag-2d");
    const AdmissibilityReport rep = admissibility_check(p.kernel, *p.family);
    CHECK(rep.admissible);
    // oracle: (integral |v|^(-1/2) e^{-v^2} dv)^2 = Gamma(1/4)^2
    const double want = std::pow(3.62560990027886, 2.0) / 1.0;  // Gamma(1/4) = 3.6256099...
    CHECK(rep.bound == doctest::Approx(want).epsilon(1e-3));
}

TEST_CASE("unknown preset name") {
    try {
        make_preset("nosuch");
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()) == "unknown preset: nosuch");
    }
    CHECK_THROWS_AS(make_preset("boyd", 0.7), NumericError);  // alpha >= 1/2
}

TEST_CASE("definition JSON loads a custom family and kernel") {
    const std::string text = R"json({
      "n": 1,
      "kernel": {"kind": "expr", "expr": "chi(0,1)(u)",
                 "support": {"kind": "box", "box": [[0, 1]]}},
      "family": {
        "name": "scale-clone",
        "a": ["u"],
        "b": {"1,1": ["exp(t)"], "2,2": ["exp(t)"]},
        "jac": {"1,1": "exp(t)", "2,2": "exp(t)"},
        "positive_definite": true
      }
    })json";
    const Preset p = load_definition_json(text);
    CHECK(p.family->name == "scale-clone");
    const AdmissibilityReport rep = admissibility_check(p.kernel, *p.family);
    CHECK(rep.admissible);
    CHECK(std::abs(rep.bound - 2.0) < 1e-6);

    CHECK_THROWS_AS(load_definition_json("{not json"), UsageError);
    CHECK_THROWS_AS(load_definition_json(R"json({"n":1,"kernel":{"kind":"expr","expr":"u"}})json"),
                    UsageError);  // family missing
}

TEST_CASE("definition JSON accepts preset references") {
    const Preset p = load_definition_json(R"json({"n":1,"kernel":{"kind":"preset","preset":"calderon"}})json");
    CHECK(p.family->name == "inverse-scale");
    const double u = 2.0;
    CHECK(p.kernel.eval(std::span<const double>(&u, 1)) == doctest::Approx(0.25));
}

TEST_CASE("tabulate evaluates kernels on a grid and guards log-table coverage") {
    const Preset p = make_preset("calderon");
    const Grid narrow = Grid::line(-2.0, 2.0, 401);
    SampledFunction q = SampledFunction::sample(narrow, [](std::span<const double> t) {
        return Complex(std::exp(-0.5 * std::abs(t[0])));
    });
    const KernelSpec k = from_log_coordinates(std::move(q), p.family);
    CHECK_NOTHROW(tabulate(k, Grid::line(0.2, 5.0, 101, true)));
    CHECK_THROWS_AS(tabulate(k, Grid::line(1e-3, 1e3, 101, true)), NumericError);
}
