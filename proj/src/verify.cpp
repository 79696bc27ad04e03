#include "hausdorff/verify.hpp"

#include <cmath>
#include <random>

#include "hausdorff/transforms.hpp"
#include "json.hpp"

namespace hausdorff {

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["pass"] = pass;
    j["checks"] = nlohmann::json::array();
    for (const SuiteCheck& c : checks)
        j["checks"].push_back(
            {{"name", c.name}, {"error", c.error}, {"tol", c.tolerance}, {"pass", c.pass}});
    return j.dump(2);
}

namespace {

struct SuiteBuilder {
    VerificationReport rep;

    void add(const std::string& name, double error, double tol) {
        rep.checks.push_back({name, error, tol, error <= tol});
    }
    void add_attainment(const std::string& name, double shortfall) {
        // shortfall <= 0 means the target was reached
        rep.checks.push_back({name, shortfall, 0.0, shortfall <= 0.0});
    }
    void run(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            rep.checks.push_back({name + " [failed: " + e.what() + "]",
                                  std::numeric_limits<double>::infinity(), 0.0, false});
        }
    }
    VerificationReport finish() {
        rep.pass = !rep.checks.empty();
        for (const SuiteCheck& c : rep.checks) rep.pass = rep.pass && c.pass;
        return rep;
    }
};

SampledFunction gaussian_on(const Grid& g, double center, double width) {
    return SampledFunction::sample(g, [&](std::span<const double> x) {
        double e = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double d = (x[k] - center) / width;
            e += 0.5 * d * d;
        }
        return Complex(std::exp(-e));
    });
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// ---------------------------------------------------------------- suites

VerificationReport suite_specfun(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "specfun-reference";
    b.rep.seed = cfg.seed;
    b.run("bessel k half order closed form", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double z = 0.1 * std::pow(200.0, i / 199.0);
            const double got = bessel_k_real(0.5, z);
            const double want = std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
            worst = std::max(worst, std::abs(got - want) / want);
        }
        b.add("bessel k half order closed form", worst, 1e-9);
    });
    b.run("gamma recurrence", [&] {
        double worst = 0.0;
        for (double x = 0.1; x < 4.95; x += 0.1)
            worst = std::max(worst,
                             std::abs(gamma_real(x + 1.0) - x * gamma_real(x)) / gamma_real(x + 1.0));
        b.add("gamma recurrence", worst, 1e-12);
    });
    b.run("bessel recurrence", [&] {
        double worst = 0.0;
        for (double nu = 0.25; nu <= 2.01; nu += 0.25) {
            for (double z : {0.5, 1.0, 2.0, 5.0, 10.0}) {
                const double lhs = bessel_k_real(nu + 1.0, z);
                const double rhs = bessel_k_real(nu - 1.0, z) + (2.0 * nu / z) * bessel_k_real(nu, z);
                worst = std::max(worst, std::abs(lhs - rhs) / lhs);
            }
        }
        b.add("bessel recurrence", worst, 1e-8);
    });
    return b.finish();
}

VerificationReport suite_two_route(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "two-route-symbol";
    b.rep.seed = cfg.seed;
    const Grid s_grid = Grid::line(-20.0, 20.0, 801);
    SymbolSettings st;
    st.t_half_width = 60.0;
    st.t_count = 180001;
    st.direct_step = 2.0 * st.t_half_width / static_cast<double>(st.t_count - 1);
    for (const auto& [name, alpha] : std::vector<std::pair<std::string, double>>{
             {"cesaro", 0.0}, {"boyd", 0.25}, {"calderon", 0.0}}) {
        const std::string label = "two-route agreement: " + name;
        b.run(label, [&, name = name, alpha = alpha] {
            const OperatorSpec op = make_operator(make_preset(name, alpha));
            const SampledFunction a = scalar_symbol(op, s_grid, SymbolMethod::LogFourier, st);
            const SampledFunction d = scalar_symbol(op, s_grid, SymbolMethod::Direct, st);
            b.add(label, rel_linf(d, a), 1e-6);
        });
    }
    return b.finish();
}

void symbol_level_pair_1d(SuiteBuilder& b, const std::string& label, const Preset& pk,
                          const Preset& pl) {
    CalculusSettings cs;
    cs.conv_step = 0.01;
    const OperatorSpec ok = make_operator(pk);
    const OperatorSpec ol = make_operator(pl);
    const KernelSpec q = product_kernel(pk.kernel, pl.kernel, pk.family, cs);
    const OperatorSpec oq = make_operator(q, pk.family);
    const Grid s_grid = Grid::line(-20.0, 20.0, 801);
    SymbolSettings st;
    st.t_half_width = cs.conv_half_width;
    st.t_count = 2 * static_cast<std::size_t>(std::llround(cs.conv_half_width / cs.conv_step)) + 1;
    const SampledFunction phi_q = scalar_symbol(oq, s_grid, SymbolMethod::LogFourier, st);
    const SampledFunction phi_k = scalar_symbol(ok, s_grid, SymbolMethod::LogFourier, st);
    const SampledFunction phi_l = scalar_symbol(ol, s_grid, SymbolMethod::LogFourier, st);
    b.add(label, rel_linf(phi_q, pointwise_product(phi_k, phi_l)), 1e-6);
}

void symbol_level_pair_2d(SuiteBuilder& b, const std::string& label) {
    const Preset p = make_preset("dilation-diag-2d");
    CalculusSettings cs;
    cs.conv2_half_width = 40.0;
    cs.conv2_step = 1.0;
    const KernelSpec q = product_kernel(p.kernel, p.kernel, p.family, cs);
    QuadratureSettings quad;
    quad.uniform_half_width = 4.5;
    quad.uniform_step = 0.05;
    const OperatorSpec ok = make_operator(p, quad);
    const OperatorSpec oq = make_operator(q, p.family, quad);
    const Axis s_ax(-10.0, 10.0, 21);
    const Grid s_grid = Grid::plane(s_ax, s_ax);
    SymbolSettings st_in;  // transforms of the factors, on the convolution input grid
    st_in.t2_half_width = cs.conv2_half_width;
    st_in.t2_count = 2 * static_cast<std::size_t>(std::llround(cs.conv2_half_width / cs.conv2_step)) + 1;
    const SymbolMatrix phi = matrix_symbol(ok, s_grid, st_in);
    const SymbolMatrix smb_q = matrix_symbol(oq, s_grid);  // native grid of the product
    // reference: matrix product of phi with itself, entrywise comparison
    double worst = 0.0, scale = 0.0;
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            SampledFunction want(s_grid);
            for (int k = 1; k <= 4; ++k)
                want = want + pointwise_product(phi.at(i, k), phi.at(k, j));
            scale = std::max(scale, max_abs(want));
            worst = std::max(worst, distance_linf(smb_q.at(i, j), want));
        }
    }
    b.add(label, worst / std::max(scale, 1e-300), 1e-6);
}

VerificationReport suite_multiplicativity(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "multiplicativity";
    b.rep.seed = cfg.seed;
    const auto pairs = std::vector<std::tuple<std::string, double, std::string, double>>{
        {"cesaro", 0.0, "cesaro", 0.0},
        {"cesaro", 0.0, "boyd", 0.25},
        {"boyd", 0.25, "boyd", 0.25},
        {"calderon", 0.0, "calderon", 0.0}};
    for (const auto& [n1, a1, n2, a2] : pairs) {
        const std::string label = "symbol multiplicativity: " + n1 + " x " + n2;
        b.run(label, [&, n1 = n1, a1 = a1, n2 = n2, a2 = a2] {
            symbol_level_pair_1d(b, label, make_preset(n1, a1), make_preset(n2, a2));
        });
    }
    b.run("symbol multiplicativity: dilation-diag-2d x dilation-diag-2d", [&] {
        symbol_level_pair_2d(b, "symbol multiplicativity: dilation-diag-2d x dilation-diag-2d");
    });

    // operator-level oracle on Gaussian test functions
    std::mt19937_64 rng(cfg.seed);
    const int nfun = cfg.overrides.count("functions")
                         ? static_cast<int>(cfg.overrides.at("functions"))
                         : 2;
    b.run("operator oracle: cesaro x boyd", [&] {
        const Preset pk = make_preset("cesaro");
        const Preset pl = make_preset("boyd", 0.25);
        const OperatorSpec ok = make_operator(pk);
        const OperatorSpec ol = make_operator(pl);
        const OperatorSpec oq = make_operator(product_kernel(pk.kernel, pl.kernel, pk.family),
                                              pk.family);
        const Grid x_grid = Grid::line(0.005, 40.0, 2001);
        double worst = 0.0;
        for (int i = 0; i < nfun; ++i) {
            const SampledFunction f = gaussian_on(x_grid, uniform(rng, 3.0, 10.0), uniform(rng, 0.5, 1.5));
            const SampledFunction lhs = apply(oq, f, x_grid);
            const SampledFunction rhs = apply(ok, apply(ol, f, x_grid), x_grid);
            worst = std::max(worst, rel_l2(lhs, rhs));
        }
        b.add("operator oracle: cesaro x boyd", worst, 1e-3);
    });
    b.run("operator oracle: calderon x calderon", [&] {
        const Preset p = make_preset("calderon");
        const OperatorSpec ok = make_operator(p);
        const OperatorSpec oq = make_operator(product_kernel(p.kernel, p.kernel, p.family),
                                              p.family);
        // intermediate results live on a wide grid; the two routes are
        // compared on a window whose boundaries have decayed
        const Grid wide = Grid::line(1e-6, 1e6, 4001, true);
        const Grid x_grid = Grid::line(1e-2, 1e2, 2001, true);
        double worst = 0.0;
        for (int i = 0; i < nfun; ++i) {
            const double c = uniform(rng, 1.5, 5.0);
            const SampledFunction f = gaussian_on(wide, c, c / uniform(rng, 5.0, 8.0));
            const SampledFunction lhs = apply(oq, f, x_grid);
            const SampledFunction rhs = apply(ok, apply(ok, f, wide), x_grid);
            worst = std::max(worst, rel_l2(lhs, rhs));
        }
        b.add("operator oracle: calderon x calderon", worst, 1e-3);
    });
    return b.finish();
}

VerificationReport suite_commutativity(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "commutativity";
    b.rep.seed = cfg.seed;
    std::mt19937_64 rng(cfg.seed);
    const int nfun = cfg.overrides.count("functions")
                         ? static_cast<int>(cfg.overrides.at("functions"))
                         : 2;
    const Grid x_grid = Grid::line(0.005, 40.0, 2001);
    auto check = [&](const std::string& label, const OperatorSpec& o1, const OperatorSpec& o2) {
        double worst = 0.0;
        for (int i = 0; i < nfun; ++i) {
            const SampledFunction f = gaussian_on(x_grid, uniform(rng, 3.0, 10.0), uniform(rng, 0.5, 1.5));
            const SampledFunction lhs = apply(o1, apply(o2, f, x_grid), x_grid);
            const SampledFunction rhs = apply(o2, apply(o1, f, x_grid), x_grid);
            worst = std::max(worst, rel_l2(lhs, rhs));
        }
        b.add(label, worst, 1e-3);
    };
    b.run("commutativity: cesaro / boyd(0.25)", [&] {
        check("commutativity: cesaro / boyd(0.25)", make_operator(make_preset("cesaro")),
              make_operator(make_preset("boyd", 0.25)));
    });
    b.run("commutativity: boyd(0.25) / boyd(0.4)", [&] {
        check("commutativity: boyd(0.25) / boyd(0.4)", make_operator(make_preset("boyd", 0.25)),
              make_operator(make_preset("boyd", 0.4)));
    });
    b.run("commutativity: cesaro / cesaro^2", [&] {
        const Preset p = make_preset("cesaro");
        check("commutativity: cesaro / cesaro^2", make_operator(p),
              make_operator(product_kernel(p.kernel, p.kernel, p.family), p.family));
    });
    return b.finish();
}

VerificationReport suite_boyd_power(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "boyd-power";
    b.rep.seed = cfg.seed;
    std::vector<std::pair<double, int>> combos = {{0.0, 2}, {0.0, 3}, {0.25, 2}};
    if (cfg.overrides.count("l")) {
        const int l = static_cast<int>(cfg.overrides.at("l"));
        const double alpha = cfg.overrides.count("alpha") ? cfg.overrides.at("alpha") : 0.0;
        combos = {{alpha, l}};
    }
    const Grid x_grid = Grid::line(0.005, 20.48, 4096);
    QuadratureSettings quad;
    quad.log_step = 0.01;
    for (const auto& [alpha, l] : combos) {
        const std::string label =
            "power formula: alpha=" + std::to_string(alpha) + " l=" + std::to_string(l);
        b.run(label, [&, alpha = alpha, l = l] {
            std::mt19937_64 rng(cfg.seed);  // same functions for every combo
            const Preset base = make_preset(alpha == 0.0 ? "cesaro" : "boyd", alpha);
            const OperatorSpec op = make_operator(base, quad);
            const OperatorSpec op_l =
                make_operator(boyd_power_kernel(alpha, l), base.family, quad);
            double worst = 0.0;
            for (int i = 0; i < 3; ++i) {
                const SampledFunction f =
                    gaussian_on(x_grid, uniform(rng, 2.5, 8.0), uniform(rng, 0.3, 0.8));
                const SampledFunction lhs = apply_iterated(op, l, f, x_grid);
                const SampledFunction rhs = apply(op_l, f, x_grid);
                worst = std::max(worst, rel_l2(lhs, rhs));
            }
            b.add(label, worst, 1e-3);
        });
    }
    return b.finish();
}

VerificationReport suite_calderon_alpha1(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "calderon-alpha1";
    b.rep.seed = cfg.seed;
    b.run("closed form alpha=1 recovery", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double u = 0.01 * std::pow(1e4, i / 199.0);
            const double got = calderon_fractional_kernel(1.0, u);
            const double want = 1.0 / (u * std::max(1.0, u));
            worst = std::max(worst, std::abs(got - want) / want);
        }
        b.add("closed form alpha=1 recovery", worst, 1e-8);
    });
    b.run("pipeline alpha=1 recovery", [&] {
        const OperatorSpec op = make_operator(make_preset("calderon"));
        const KernelSpec k1 = fractional_kernel(op, 1.0);
        const double u2 = 2.0;
        b.add("pipeline alpha=1 recovery at u=2",
              std::abs(k1.eval(std::span<const double>(&u2, 1)) - 0.25), 1e-6);
        double worst = 0.0;
        for (double u : {0.2, 0.5, 5.0, 20.0}) {
            const double got = k1.eval(std::span<const double>(&u, 1));
            const double want = 1.0 / (u * std::max(1.0, u));
            worst = std::max(worst, std::abs(got - want) / want);
        }
        b.add("pipeline alpha=1 recovery elsewhere (relative)", worst, 1e-5);
    });
    return b.finish();
}

VerificationReport suite_frac_semigroup(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "frac-semigroup";
    b.rep.seed = cfg.seed;
    std::mt19937_64 rng(cfg.seed);
    const int nfun = cfg.overrides.count("functions")
                         ? static_cast<int>(cfg.overrides.at("functions"))
                         : 2;
    b.run("half power applied twice", [&] {
        const Preset p = make_preset("calderon");
        const OperatorSpec op = make_operator(p);
        const OperatorSpec op_half = make_operator(fractional_kernel(op, 0.5), p.family);
        const Grid x_grid = Grid::line(1e-4, 1e4, 3001, true);
        double worst = 0.0;
        for (int i = 0; i < nfun; ++i) {
            const SampledFunction f = gaussian_on(x_grid, uniform(rng, 1.0, 5.0), uniform(rng, 0.4, 1.0));
            const SampledFunction lhs = apply(op_half, apply(op_half, f, x_grid), x_grid);
            const SampledFunction rhs = apply(op, f, x_grid);
            worst = std::max(worst, rel_l2(lhs, rhs));
        }
        b.add("half power applied twice", worst, 1e-2);
    });
    b.run("alpha=2 equals the convolution square", [&] {
        const Preset p = make_preset("calderon");
        const OperatorSpec op = make_operator(p);
        const KernelSpec k2 = fractional_kernel(op, 2.0);
        const KernelSpec q2 = product_kernel(p.kernel, p.kernel, p.family);
        double worst = 0.0, scale = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double u = 0.05 * std::pow(400.0, i / 199.0);
            const double a = k2.eval(std::span<const double>(&u, 1));
            const double bb = q2.eval(std::span<const double>(&u, 1));
            worst = std::max(worst, std::abs(a - bb));
            scale = std::max(scale, std::abs(bb));
        }
        b.add("alpha=2 equals the convolution square", worst / std::max(scale, 1e-300), 1e-4);
    });
    return b.finish();
}

VerificationReport suite_norm_bound(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "norm-bound";
    b.rep.seed = cfg.seed;
    b.run("norm bound and near-attainment", [&] {
        std::mt19937_64 rng(cfg.seed);
        const int nfun = cfg.overrides.count("functions")
                             ? static_cast<int>(cfg.overrides.at("functions"))
                             : 100;
        const Preset p = make_preset("cesaro");
        QuadratureSettings quad;
        quad.log_step = 0.02;
        const OperatorSpec op = make_operator(p, quad);
        const double norm = symbol_norm(
            SymbolMatrix::scalar(scalar_symbol(op, Grid::line(-20.0, 20.0, 2001))));
        const Grid x_grid = Grid::line(0.005, 60.0, 1501);
        double max_ratio = 0.0;
        for (int i = 0; i < nfun; ++i) {
            const SampledFunction f =
                gaussian_on(x_grid, uniform(rng, 0.3, 6.0), uniform(rng, 0.25, 1.5));
            const double nf = norm_l2(f);
            if (nf == 0.0) continue;
            const double ratio = norm_l2(apply(op, f, x_grid)) / nf;
            max_ratio = std::max(max_ratio, ratio);
        }
        b.add("norm bound over random functions", std::max(0.0, max_ratio / norm - 1.0), 1e-6);
        b.add_attainment("near-attainment of the norm (>= norm/2)", 0.5 * norm - max_ratio);
    });
    return b.finish();
}

VerificationReport suite_balakrishnan(const SuiteConfig& cfg) {
    SuiteBuilder b;
    b.rep.suite = "balakrishnan-pointwise";
    b.rep.seed = cfg.seed;
    b.run("resolvent power identity on the symbol range", [&] {
        const OperatorSpec op = make_operator(make_preset("calderon"));
        const SampledFunction phi = scalar_symbol(op, Grid::line(0.0, 20.0, 50));
        double worst = 0.0;
        for (double alpha : {0.5, 1.5}) {
            for (const Complex& v : phi.values) {
                const double x = v.real();
                const double got = balakrishnan_power(x, alpha, 2);
                const double want = std::pow(x, alpha);
                worst = std::max(worst, std::abs(got - want) / want);
            }
        }
        b.add("resolvent power identity on the symbol range", worst, 1e-6);
    });
    return b.finish();
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"two-route-symbol", "multiplicativity",  "commutativity",
            "boyd-power",       "calderon-alpha1",   "frac-semigroup",
            "norm-bound",       "balakrishnan-pointwise", "specfun-reference"};
}

VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "specfun-reference") return suite_specfun(cfg);
    if (name == "two-route-symbol") return suite_two_route(cfg);
    if (name == "multiplicativity") return suite_multiplicativity(cfg);
    if (name == "commutativity") return suite_commutativity(cfg);
    if (name == "boyd-power") return suite_boyd_power(cfg);
    if (name == "calderon-alpha1") return suite_calderon_alpha1(cfg);
    if (name == "frac-semigroup") return suite_frac_semigroup(cfg);
    if (name == "norm-bound") return suite_norm_bound(cfg);
    if (name == "balakrishnan-pointwise") return suite_balakrishnan(cfg);
    throw UsageError("unknown suite: " + name);
}

}  // namespace hausdorff
