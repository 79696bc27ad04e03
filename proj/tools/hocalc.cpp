// hocalc: symbol calculus for Hausdorff operators on L2(R^n).
//
// Subcommands: symbol, matrix-symbol, apply, power, function, fracpow,
// spectrum, verify. Every run writes its outputs as CSV plus a JSON manifest
// (inputs, grids, warnings, timing) next to the main output.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hausdorff/calculus.hpp"
#include "hausdorff/io.hpp"
#include "hausdorff/transforms.hpp"
#include "hausdorff/verify.hpp"
#include "json.hpp"

namespace hd = hausdorff;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string preset;
    double alpha = 0.0;  // boyd preset parameter
    std::string config_path;
    std::string out;
};

void add_source_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--preset", o.preset, "preset name (cesaro, boyd, calderon, dilation-diag-2d, negbox)");
    cmd->add_option("--preset-alpha", o.alpha, "alpha parameter of the boyd preset");
    cmd->add_option("--config", o.config_path, "kernel/family definition JSON");
    cmd->add_option("--out", o.out, "output CSV path")->required();
}

hd::Preset resolve_source(const CommonOpts& o) {
    if (!o.preset.empty() && !o.config_path.empty())
        throw hd::UsageError("give either --preset or --config, not both");
    if (!o.preset.empty()) return hd::make_preset(o.preset, o.alpha);
    if (!o.config_path.empty()) return hd::load_definition_file(o.config_path);
    throw hd::UsageError("a kernel source is required (--preset or --config)");
}

struct GridOpts {
    double min = -20.0, max = 20.0;
    std::size_t count = 4001;
    bool log_axis = false;
};

void add_grid_flags(CLI::App* cmd, GridOpts& g, const std::string& prefix) {
    cmd->add_option("--" + prefix + "-min", g.min, prefix + " grid minimum");
    cmd->add_option("--" + prefix + "-max", g.max, prefix + " grid maximum");
    cmd->add_option("--" + prefix + "-count", g.count, prefix + " grid point count");
    if (prefix != "s")
        cmd->add_flag("--" + prefix + "-log", g.log_axis, "sample the " + prefix + " axis log-uniformly");
}

hd::Grid make_grid(const GridOpts& g, int n) {
    if (n == 1) return hd::Grid::line(g.min, g.max, g.count, g.log_axis);
    const hd::Axis ax(g.min, g.max, g.count, g.log_axis);
    return hd::Grid::plane(ax, ax);
}

json grid_json(const hd::Grid& g) {
    json out = json::array();
    for (int k = 0; k < g.n; ++k)
        out.push_back({{"min", g.axes[k].min},
                       {"max", g.axes[k].max},
                       {"count", g.axes[k].count},
                       {"half_line", g.axes[k].half_line}});
    return out;
}

class Manifest {
  public:
    Manifest(std::string command, std::string out_path)
        : out_path_(std::move(out_path)), start_(std::chrono::steady_clock::now()) {
        j_["command"] = std::move(command);
        j_["config"] = json::object();
    }
    json& config() { return j_["config"]; }
    void set_warnings(const hd::Diagnostics& d) {
        j_["warnings"] = d.warnings;
        if (d.out_of_domain_evals > 0) {
            j_["out_of_domain_evals"] = d.out_of_domain_evals;
            j_["out_of_domain_mass"] = d.out_of_domain_mass;
        }
    }
    void extra(const std::string& key, json v) { j_[key] = std::move(v); }
    void write() {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
        j_["timing_ms"] = ms;
        if (!j_.contains("warnings")) j_["warnings"] = json::array();
        std::ofstream f(out_path_ + ".manifest.json", std::ios::binary);
        if (!f) throw hd::UsageError("cannot write manifest next to " + out_path_);
        f << j_.dump(2) << "\n";
    }

  private:
    json j_;
    std::string out_path_;
    std::chrono::steady_clock::time_point start_;
};

hd::SampledFunction load_input_function(const std::string& spec, const hd::Grid& grid) {
    if (spec.rfind("gaussian:", 0) == 0) {
        const std::string rest = spec.substr(9);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw hd::UsageError("expected gaussian:center,width");
        const double c = std::stod(rest.substr(0, comma));
        const double w = std::stod(rest.substr(comma + 1));
        if (!(w > 0)) throw hd::UsageError("gaussian width must be positive");
        return hd::SampledFunction::sample(grid, [&](std::span<const double> x) {
            double e = 0.0;
            for (double xv : x) {
                const double d = (xv - c) / w;
                e += 0.5 * d * d;
            }
            return hd::Complex(std::exp(-e));
        });
    }
    return hd::io::read_csv(spec);
}

int run(int argc, char** argv) {
    CLI::App app{"symbol calculus for Hausdorff operators on L2(R^n)"};
    app.require_subcommand(1);

    // ---- symbol
    CommonOpts sym_o;
    GridOpts sym_s;
    std::string sym_method = "log-fourier";
    auto* sym = app.add_subcommand("symbol", "scalar symbol of a positive definite family operator");
    add_source_flags(sym, sym_o);
    add_grid_flags(sym, sym_s, "s");
    sym->add_option("--method", sym_method, "log-fourier or direct")
        ->check(CLI::IsMember({"log-fourier", "direct"}));

    // ---- matrix-symbol
    CommonOpts msym_o;
    GridOpts msym_s;
    auto* msym = app.add_subcommand("matrix-symbol", "matrix symbol over the octant pairs");
    add_source_flags(msym, msym_o);
    add_grid_flags(msym, msym_s, "s");

    // ---- apply
    CommonOpts ap_o;
    GridOpts ap_x{0.005, 40.0, 2001, false};
    std::string ap_f;
    auto* ap = app.add_subcommand("apply", "apply the operator to a function");
    add_source_flags(ap, ap_o);
    add_grid_flags(ap, ap_x, "x");
    ap->add_option("--f", ap_f, "input function: gaussian:center,width or a CSV path")->required();

    // ---- power
    CommonOpts pw_o;
    GridOpts pw_u{1e-6, 1.0, 2001, true};
    int pw_l = 2;
    auto* pw = app.add_subcommand("power", "kernel of the l-th operator power");
    add_source_flags(pw, pw_o);
    add_grid_flags(pw, pw_u, "u");
    pw->add_option("--l", pw_l, "power")->required();

    // ---- function
    CommonOpts fn_o;
    GridOpts fn_u{1e-6, 1.0, 2001, true};
    std::string fn_spec;
    auto* fn = app.add_subcommand("function", "kernel of F(H) for holomorphic F with F(0)=0");
    add_source_flags(fn, fn_o);
    add_grid_flags(fn, fn_u, "u");
    fn->add_option("--F", fn_spec, "poly:c1[,c2,...] | expm1 | pow:alpha")->required();

    // ---- fracpow
    CommonOpts fr_o;
    GridOpts fr_u{0.01, 100.0, 2001, true};
    double fr_alpha = 0.5;
    bool fr_closed = false;
    auto* fr = app.add_subcommand("fracpow", "kernel of the fractional power H^alpha");
    add_source_flags(fr, fr_o);
    add_grid_flags(fr, fr_u, "u");
    fr->add_option("--alpha", fr_alpha, "exponent")->required();
    fr->add_flag("--closed-form", fr_closed,
                 "use the Bessel closed form (calderon preset only)");

    // ---- spectrum
    CommonOpts sp_o;
    GridOpts sp_s;
    auto* sp = app.add_subcommand("spectrum", "sampled symbol range and interval hull");
    add_source_flags(sp, sp_o);
    add_grid_flags(sp, sp_s, "s");

    // ---- verify
    std::string vf_suite;
    std::uint64_t vf_seed = 20240801;
    std::vector<std::string> vf_overrides;
    std::string vf_out;
    auto* vf = app.add_subcommand("verify", "run a named verification suite");
    vf->add_option("--suite", vf_suite, "suite name")->required();
    vf->add_option("--seed", vf_seed, "random seed recorded in the report");
    vf->add_option("--set", vf_overrides, "suite override key=value (repeatable)");
    vf->add_option("--out", vf_out, "report JSON path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (sym->parsed()) {
        Manifest man("symbol", sym_o.out);
        hd::Diagnostics diag;
        const hd::Preset p = resolve_source(sym_o);
        const hd::OperatorSpec op = hd::make_operator(p);
        const hd::Grid s_grid = make_grid(sym_s, p.family->n);
        const auto method = sym_method == "direct" ? hd::SymbolMethod::Direct
                                                   : hd::SymbolMethod::LogFourier;
        const hd::SampledFunction phi = hd::scalar_symbol(op, s_grid, method, {}, &diag);
        hd::io::write_csv(phi, sym_o.out, p.family->n == 1 ? std::vector<std::string>{"s"}
                                                           : std::vector<std::string>{"s1", "s2"});
        man.config() = {{"preset", sym_o.preset}, {"config", sym_o.config_path},
                        {"method", sym_method},   {"s_grid", grid_json(s_grid)},
                        {"admissibility_bound", op.admissibility_bound}};
        man.set_warnings(diag);
        man.write();
        return 0;
    }
    if (msym->parsed()) {
        Manifest man("matrix-symbol", msym_o.out);
        hd::Diagnostics diag;
        const hd::Preset p = resolve_source(msym_o);
        const hd::OperatorSpec op = hd::make_operator(p);
        const hd::Grid s_grid = make_grid(msym_s, p.family->n);
        const hd::SymbolMatrix m = hd::matrix_symbol(op, s_grid, {}, &diag);
        std::string stem = msym_o.out;
        if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
            stem = stem.substr(0, stem.size() - 4);
        json entries = json::array();
        for (int i = 1; i <= m.size; ++i) {
            for (int j = 1; j <= m.size; ++j) {
                const std::string path =
                    stem + "_" + std::to_string(i) + std::to_string(j) + ".csv";
                hd::io::write_csv(m.at(i, j), path,
                                  p.family->n == 1 ? std::vector<std::string>{"s"}
                                                   : std::vector<std::string>{"s1", "s2"});
                entries.push_back({{"i", i}, {"j", j}, {"path", path}});
            }
        }
        man.config() = {{"preset", msym_o.preset}, {"config", msym_o.config_path},
                        {"s_grid", grid_json(s_grid)}};
        man.extra("entries", entries);
        man.set_warnings(diag);
        man.write();
        return 0;
    }
    if (ap->parsed()) {
        Manifest man("apply", ap_o.out);
        hd::Diagnostics diag;
        const hd::Preset p = resolve_source(ap_o);
        const hd::OperatorSpec op = hd::make_operator(p);
        const hd::Grid x_grid = make_grid(ap_x, p.family->n);
        const hd::SampledFunction f = load_input_function(ap_f, x_grid);
        const hd::SampledFunction g = hd::apply(op, f, x_grid, &diag);
        hd::io::write_csv(g, ap_o.out);
        man.config() = {{"preset", ap_o.preset}, {"config", ap_o.config_path},
                        {"f", ap_f},             {"x_grid", grid_json(x_grid)}};
        man.set_warnings(diag);
        man.write();
        return 0;
    }
    if (pw->parsed()) {
        Manifest man("power", pw_o.out);
        hd::Diagnostics diag;
        const hd::Preset p = resolve_source(pw_o);
        if (pw_l < 1) throw hd::UsageError("power: --l must be positive");
        hd::KernelSpec k = p.kernel;
        for (int i = 1; i < pw_l; ++i) k = hd::product_kernel(k, p.kernel, p.family, {}, &diag);
        const hd::Grid u_grid = make_grid(pw_u, p.family->n);
        hd::io::write_csv(hd::tabulate(k, u_grid, &diag), pw_o.out);
        man.config() = {{"preset", pw_o.preset}, {"config", pw_o.config_path},
                        {"l", pw_l},             {"u_grid", grid_json(u_grid)}};
        man.set_warnings(diag);
        man.write();
        return 0;
    }
    if (fn->parsed()) {
        Manifest man("function", fn_o.out);
        hd::Diagnostics diag;
        const hd::Preset p = resolve_source(fn_o);
        hd::HoloFunctionSpec F;
        if (fn_spec == "expm1") {
            F = hd::HoloFunctionSpec::expm1();
        } else if (fn_spec.rfind("pow:", 0) == 0) {
            F = hd::HoloFunctionSpec::power(std::stod(fn_spec.substr(4)));
        } else if (fn_spec.rfind("poly:", 0) == 0) {
            std::vector<double> coeffs;
            std::stringstream ss(fn_spec.substr(5));
            std::string cell;
            while (std::getline(ss, cell, ',')) coeffs.push_back(std::stod(cell));
            F = hd::HoloFunctionSpec::polynomial(std::move(coeffs));
        } else {
            throw hd::UsageError("unknown function spec: " + fn_spec);
        }
        const hd::OperatorSpec op = hd::make_operator(p);
        const hd::KernelSpec kf = hd::holomorphic_kernel(op, F, {}, &diag);
        const hd::Grid u_grid = make_grid(fn_u, p.family->n);
        hd::io::write_csv(hd::tabulate(kf, u_grid, &diag), fn_o.out);
        man.config() = {{"preset", fn_o.preset}, {"config", fn_o.config_path},
                        {"F", fn_spec},          {"u_grid", grid_json(u_grid)}};
        man.set_warnings(diag);
        man.write();
        return 0;
    }
    if (fr->parsed()) {
        Manifest man("fracpow", fr_o.out);
        hd::Diagnostics diag;
        const hd::Grid u_grid = [&] {
            if (fr_closed) return make_grid(fr_u, 1);
            const hd::Preset p = resolve_source(fr_o);
            return make_grid(fr_u, p.family->n);
        }();
        if (fr_closed) {
            if (fr_o.preset != "calderon")
                throw hd::UsageError("--closed-form is available for the calderon preset only");
            const hd::SampledFunction k =
                hd::SampledFunction::sample(u_grid, [&](std::span<const double> u) {
                    return hd::Complex(hd::calderon_fractional_kernel(fr_alpha, u[0]));
                });
            hd::io::write_csv(k, fr_o.out);
        } else {
            const hd::Preset p = resolve_source(fr_o);
            const hd::OperatorSpec op = hd::make_operator(p);
            const hd::KernelSpec ka = hd::fractional_kernel(op, fr_alpha, {}, &diag);
            hd::io::write_csv(hd::tabulate(ka, u_grid, &diag), fr_o.out);
        }
        man.config() = {{"preset", fr_o.preset},  {"config", fr_o.config_path},
                        {"alpha", fr_alpha},      {"closed_form", fr_closed},
                        {"u_grid", grid_json(u_grid)}};
        man.set_warnings(diag);
        man.write();
        return 0;
    }
    if (sp->parsed()) {
        Manifest man("spectrum", sp_o.out);
        hd::Diagnostics diag;
        const hd::Preset p = resolve_source(sp_o);
        const hd::OperatorSpec op = hd::make_operator(p);
        const hd::Grid s_grid = make_grid(sp_s, p.family->n);
        const hd::SampledFunction phi = hd::scalar_symbol(op, s_grid, hd::SymbolMethod::LogFourier,
                                                          {}, &diag);
        const hd::SpectrumEstimate est = hd::spectrum_estimate(phi);
        hd::io::write_csv(phi, sp_o.out, {"s"});
        for (const std::string& w : est.warnings) diag.warn(w);
        man.config() = {{"preset", sp_o.preset}, {"config", sp_o.config_path},
                        {"s_grid", grid_json(s_grid)}};
        if (est.real_nonnegative)
            man.extra("hull", {{"min", est.hull_min}, {"max", est.hull_max}});
        man.set_warnings(diag);
        man.write();
        return 0;
    }
    if (vf->parsed()) {
        hd::SuiteConfig cfg;
        cfg.seed = vf_seed;
        for (const std::string& kv : vf_overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw hd::UsageError("--set expects key=value: " + kv);
            cfg.overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        const hd::VerificationReport rep = hd::run_suite(vf_suite, cfg);
        const std::string text = rep.to_json();
        if (vf_out.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream f(vf_out, std::ios::binary);
            if (!f) throw hd::UsageError("cannot write: " + vf_out);
            f << text << "\n";
        }
        for (const hd::SuiteCheck& c : rep.checks)
            std::cerr << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  error=" << c.error
                      << " tol=" << c.tolerance << "\n";
        return rep.pass ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hd::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hd::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
