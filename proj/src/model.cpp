#include "hausdorff/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "hausdorff/io.hpp"
#include "json.hpp"

namespace hausdorff {

int octant_count(int n) {
    if (n < 1 || n > 2) throw UsageError("dimension must be 1 or 2");
    return 1 << n;
}

SignVec octant_signs(int i, int n) {
    const int m = octant_count(n);
    if (i < 1 || i > m) throw UsageError("octant index out of range");
    SignVec s{1, 1};
    for (int k = 0; k < n; ++k) s[k] = ((i - 1) >> k) & 1 ? -1 : 1;
    return s;
}

int octant_from_signs(const SignVec& s, int n) {
    int i = 0;
    for (int k = 0; k < n; ++k)
        if (s[k] < 0) i |= 1 << k;
    return i + 1;
}

SignVec octant_signature(int i, int j, int n) {
    const SignVec si = octant_signs(i, n);
    const SignVec sj = octant_signs(j, n);
    return SignVec{si[0] * sj[0], si[1] * sj[1]};
}

void MatrixFamily::eigenvalues(std::span<const double> u, double* out) const {
    expr::Env env;
    env.u = u.data();
    env.n = n;
    for (int k = 0; k < n; ++k) out[k] = expr::eval(*a[k], env);
}

void MatrixFamily::apply_matrix(std::span<const double> u, std::span<const double> x,
                                double* out) const {
    double ev[2] = {0.0, 0.0};
    eigenvalues(u, ev);
    if (n == 1) {
        out[0] = ev[0] * x[0];
        return;
    }
    if (!conjugator) {
        out[0] = ev[0] * x[0];
        out[1] = ev[1] * x[1];
        return;
    }
    const auto& c = *conjugator;
    const double y0 = c[0][0] * x[0] + c[1][0] * x[1];  // C^T x
    const double y1 = c[0][1] * x[0] + c[1][1] * x[1];
    out[0] = c[0][0] * (ev[0] * y0) + c[0][1] * (ev[1] * y1);
    out[1] = c[1][0] * (ev[0] * y0) + c[1][1] * (ev[1] * y1);
}

const MatrixFamily::PairMaps* MatrixFamily::maps_for(int i, int j) const {
    const auto it = pair_maps.find({i, j});
    return it == pair_maps.end() ? nullptr : &it->second;
}

const MatrixFamily::PairMaps* MatrixFamily::maps_for_signs(const SignVec& s) const {
    return maps_for(1, octant_from_signs(s, n));
}

void MatrixFamily::validate() const {
    if (n < 1 || n > 2) throw UsageError("family " + name + ": dimension must be 1 or 2");
    if (static_cast<int>(a.size()) != n)
        throw UsageError("family " + name + ": needs one eigenvalue map per dimension");
    for (const auto& e : a)
        if (!e) throw UsageError("family " + name + ": null eigenvalue map");
    if (conjugator) {
        const auto& c = *conjugator;
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k) dot += c[r][k] * c[s][k];
                if (std::abs(dot - (r == s ? 1.0 : 0.0)) > 1e-12)
                    throw NumericError("family " + name + ": conjugator is not orthogonal");
            }
    }
    // Sampled inverse-map consistency: |a(b(t))| = exp(t) and b(t) lands in
    // the region of the pair's signature.
    const std::vector<double> t_samples =
        n == 1 ? std::vector<double>{-8, -5, -3, -1.5, -0.5, 0, 0.5, 1.5, 3, 5, 8}
               : std::vector<double>{-6, -3, 0, 3, 6};
    for (const auto& [pair, maps] : pair_maps) {
        const auto [i, j] = pair;
        const SignVec eps = octant_signature(i, j, n);
        if (static_cast<int>(maps.b.size()) != n || !maps.jacobian)
            throw UsageError("family " + name + ": incomplete maps for a pair");
        if (positive_definite && (eps[0] < 0 || eps[1] < 0))
            throw NumericError("family " + name +
                               ": positive definite family cannot reach sign-changing regions");
        double t[2], b[2], ev[2];
        for (double t0 : t_samples) {
            for (double t1 : (n == 2 ? t_samples : std::vector<double>{0.0})) {
                t[0] = t0;
                t[1] = t1;
                expr::Env env;
                env.t = t;
                env.n = n;
                for (int k = 0; k < n; ++k) b[k] = expr::eval(*maps.b[k], env);
                eigenvalues(std::span<const double>(b, static_cast<std::size_t>(n)), ev);
                for (int k = 0; k < n; ++k) {
                    const double expected = std::exp(t[k]);
                    if (std::abs(std::abs(ev[k]) - expected) > 1e-10 * expected)
                        throw NumericError("family " + name +
                                           ": inverse map is inconsistent with |a(b(t))|=exp(t)");
                    if ((ev[k] > 0 ? 1 : -1) != eps[k])
                        throw NumericError("family " + name +
                                           ": inverse map lands in the wrong sign region");
                }
                if (expr::eval(*maps.jacobian, env) == 0.0)
                    throw NumericError("family " + name + ": vanishing Jacobian");
            }
        }
    }
    if (positive_definite) {
        double u[2], ev[2];
        for (double v0 = -8; v0 <= 8; v0 += 1.0) {
            for (double v1 = -8; v1 <= (n == 2 ? 8 : -8); v1 += 1.0) {
                u[0] = std::exp(v0);
                u[1] = std::exp(v1);
                eigenvalues(std::span<const double>(u, static_cast<std::size_t>(n)), ev);
                for (int k = 0; k < n; ++k)
                    if (!(ev[k] > 0))
                        throw NumericError("family " + name +
                                           ": eigenvalues not positive under the flag");
            }
        }
    }
}

bool omega_membership(std::span<const double> u, int i, int j, const MatrixFamily& family) {
    const SignVec eps = octant_signature(i, j, family.n);
    double ev[2];
    family.eigenvalues(u, ev);
    for (int k = 0; k < family.n; ++k) {
        if (ev[k] == 0.0) throw NumericError("omega_membership: matrix is singular at u");
        if ((ev[k] > 0 ? 1 : -1) != eps[k]) return false;
    }
    return true;
}

KernelSpec KernelSpec::from_expression(const std::string& text, int n, Support s) {
    KernelSpec k;
    k.n = n;
    k.support = s;
    k.expression = expr::parse(text, n);
    return k;
}

KernelSpec KernelSpec::from_table(SampledFunction samples, Support s) {
    KernelSpec k;
    k.n = samples.grid.n;
    k.support = s;
    k.table = std::make_shared<SampledFunction>(std::move(samples));
    return k;
}

KernelSpec KernelSpec::from_closed_form(std::function<double(std::span<const double>)> f, int n,
                                        Support s) {
    KernelSpec k;
    k.n = n;
    k.support = s;
    k.closed_form = std::move(f);
    return k;
}

KernelSpec KernelSpec::from_log_table(LogTable t, Support s) {
    KernelSpec k;
    if (!t.family) throw UsageError("log-table kernel needs a family");
    k.n = t.family->n;
    k.support = s;
    k.log_table = std::make_shared<LogTable>(std::move(t));
    return k;
}

bool KernelSpec::in_support(std::span<const double> u) const {
    switch (support.kind) {
        case Support::Kind::Full:
            return true;
        case Support::Kind::PositiveOctant:
            for (int k = 0; k < n; ++k)
                if (!(u[k] > 0)) return false;
            return true;
        case Support::Kind::Box:
            for (int k = 0; k < n; ++k)
                if (!(u[k] > support.box[k].first && u[k] < support.box[k].second)) return false;
            return true;
    }
    return true;
}

double KernelSpec::eval(std::span<const double> u, Diagnostics* diag) const {
    if (expression) {
        expr::Env env;
        env.u = u.data();
        env.n = n;
        return expr::eval(*expression, env);
    }
    if (closed_form) return closed_form(u);
    if (table) return interpolate(*table, u, diag).real();
    if (log_table) {
        const MatrixFamily& fam = *log_table->family;
        double ev[2];
        fam.eigenvalues(u, ev);
        SignVec s{1, 1};
        double t[2] = {0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            if (ev[k] == 0.0) return 0.0;
            s[k] = ev[k] > 0 ? 1 : -1;
            t[k] = std::log(std::abs(ev[k]));
            if (log_table->exclude_window > 0.0 && std::abs(t[k]) < log_table->exclude_window)
                t[k] = t[k] < 0 ? -log_table->exclude_window : log_table->exclude_window;
        }
        const auto it = log_table->q.find(s);
        if (it == log_table->q.end()) return 0.0;
        const double qv =
            interpolate(it->second, std::span<const double>(t, static_cast<std::size_t>(n)), diag)
                .real();
        if (qv == 0.0) return 0.0;
        const MatrixFamily::PairMaps* maps = fam.maps_for_signs(s);
        if (!maps) throw NumericError("log-table kernel: no inverse map for a populated region");
        expr::Env env;
        env.t = t;
        env.n = n;
        const double jac = std::abs(expr::eval(*maps->jacobian, env));
        double half_sum = 0.0;
        for (int k = 0; k < n; ++k) half_sum += 0.5 * t[k];
        return std::exp(half_sum) * qv / jac;
    }
    throw UsageError("kernel has no source");
}

SampledFunction to_log_coordinates(const KernelSpec& kernel, const MatrixFamily& family, int i,
                                   int j, const Grid& t_grid, Diagnostics* diag) {
    if (kernel.n != family.n) throw UsageError("to_log_coordinates: dimensions differ");
    if (family.positive_definite) i = j = 1;
    const MatrixFamily::PairMaps* maps = family.maps_for(i, j);
    if (!maps)
        throw NumericError("to_log_coordinates: no inverse map registered for pair (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    const int n = family.n;
    double t[2], b[2];
    return SampledFunction::sample(t_grid, [&](std::span<const double> tt) -> Complex {
        t[0] = tt[0];
        t[1] = n == 2 ? tt[1] : 0.0;
        expr::Env env;
        env.t = t;
        env.n = n;
        for (int k = 0; k < n; ++k) b[k] = expr::eval(*maps->b[k], env);
        const double kv =
            kernel.eval(std::span<const double>(b, static_cast<std::size_t>(n)), diag);
        if (kv == 0.0) return Complex(0.0);
        const double jac = std::abs(expr::eval(*maps->jacobian, env));
        double half_sum = 0.0;
        for (int k = 0; k < n; ++k) half_sum += 0.5 * t[k];
        return Complex(kv * std::exp(-half_sum) * jac);
    });
}

KernelSpec from_log_coordinates(SampledFunction q, std::shared_ptr<const MatrixFamily> family) {
    if (!family) throw UsageError("from_log_coordinates: null family");
    if (!family->positive_definite)
        throw NumericError("from_log_coordinates: family must be positive definite");
    if (q.grid.n != family->n) throw UsageError("from_log_coordinates: dimensions differ");
    LogTable t;
    t.family = std::move(family);
    t.q.emplace(SignVec{1, 1}, std::move(q));
    return KernelSpec::from_log_table(std::move(t), Support::positive());
}

SampledFunction tabulate(const KernelSpec& kernel, const Grid& u_grid, Diagnostics* diag) {
    if (u_grid.n != kernel.n) throw UsageError("tabulate: dimensions differ");
    if (kernel.log_table) {
        // Coverage check: every requested |log a(u)| must lie inside the
        // stored log grid (the declared exclusion window aside).
        const MatrixFamily& fam = *kernel.log_table->family;
        double u[2], ev[2];
        auto check = [&](std::span<const double> uu) {
            fam.eigenvalues(uu, ev);
            SignVec s{1, 1};
            double t[2];
            for (int k = 0; k < kernel.n; ++k) {
                if (ev[k] == 0.0) return;
                s[k] = ev[k] > 0 ? 1 : -1;
                t[k] = std::log(std::abs(ev[k]));
            }
            const auto it = kernel.log_table->q.find(s);
            if (it == kernel.log_table->q.end()) return;
            for (int k = 0; k < kernel.n; ++k) {
                const Axis& ax = it->second.grid.axes[k];
                const double slack = 1e-9 * (ax.max - ax.min);
                if (t[k] < ax.min - slack || t[k] > ax.max + slack)
                    throw NumericError(
                        "tabulate: log-coordinate table does not cover the requested range");
            }
        };
        for (std::size_t j = 0; j < (u_grid.n == 2 ? u_grid.axes[1].count : 1); ++j) {
            for (std::size_t i = 0; i < u_grid.axes[0].count; ++i) {
                u[0] = u_grid.axes[0].coord(i);
                if (u_grid.n == 2) u[1] = u_grid.axes[1].coord(j);
                check(std::span<const double>(u, static_cast<std::size_t>(u_grid.n)));
            }
        }
    }
    return SampledFunction::sample(
        u_grid, [&](std::span<const double> u) { return Complex(kernel.eval(u, diag)); });
}

namespace {

struct OctantRange {
    bool empty = false;
    double lo[2], hi[2];  // |u_k| interval per axis
};

OctantRange octant_abs_range(const Support& support, const SignVec& s, int n) {
    OctantRange r;
    for (int k = 0; k < n; ++k) {
        double lo = 0.0, hi = std::numeric_limits<double>::infinity();
        if (support.kind == Support::Kind::PositiveOctant && s[k] < 0) {
            r.empty = true;
            return r;
        }
        if (support.kind == Support::Kind::Box) {
            const auto [blo, bhi] = support.box[k];
            if (s[k] > 0) {
                lo = std::max(blo, 0.0);
                hi = bhi;
            } else {
                lo = std::max(-bhi, 0.0);
                hi = -blo;
            }
            if (!(hi > 0.0) || !(hi > lo)) {
                r.empty = true;
                return r;
            }
        }
        r.lo[k] = lo;
        r.hi[k] = hi;
    }
    return r;
}

// Midpoint quadrature of |det A|^(-1/2) |K| over one octant in log
// coordinates, restricted to |u_k| in [max(lo, e^-T), min(hi, e^T)].
double octant_integral(const KernelSpec& kernel, const MatrixFamily& family, const SignVec& s,
                       const OctantRange& range, double T, double h) {
    const int n = kernel.n;
    double vlo[2], vhi[2];
    std::size_t cells[2] = {1, 1};
    double step[2] = {0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        vlo[k] = std::max(-T, range.lo[k] > 0 ? std::log(range.lo[k]) : -T);
        vhi[k] = std::min(T, std::isfinite(range.hi[k]) ? std::log(range.hi[k]) : T);
        if (!(vhi[k] > vlo[k])) return 0.0;
        cells[k] = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                std::ceil((vhi[k] - vlo[k]) / h - 1e-12)));
        step[k] = (vhi[k] - vlo[k]) / static_cast<double>(cells[k]);
    }
    double acc = 0.0;
    double u[2], ev[2];
    for (std::size_t c1 = 0; c1 < (n == 2 ? cells[1] : 1); ++c1) {
        if (n == 2) u[1] = s[1] * std::exp(vlo[1] + step[1] * (static_cast<double>(c1) + 0.5));
        for (std::size_t c0 = 0; c0 < cells[0]; ++c0) {
            const double v0 = vlo[0] + step[0] * (static_cast<double>(c0) + 0.5);
            u[0] = s[0] * std::exp(v0);
            const std::span<const double> us(u, static_cast<std::size_t>(n));
            const double kv = std::abs(kernel.eval(us));
            if (kv == 0.0) continue;
            family.eigenvalues(us, ev);
            double det = 1.0, meas = std::abs(u[0]);
            for (int k = 0; k < n; ++k) det *= ev[k];
            if (n == 2) meas *= std::abs(u[1]);
            const double val = kv / std::sqrt(std::abs(det)) * meas;
            if (!std::isfinite(val))
                throw NumericError("admissibility_check: integrand evaluation failed");
            acc += val;
        }
    }
    double cell = step[0];
    if (n == 2) cell *= step[1];
    return acc * cell;
}

double window_integral(const KernelSpec& kernel, const MatrixFamily& family, double T, double h) {
    double acc = 0.0;
    for (int i = 1; i <= octant_count(kernel.n); ++i) {
        const SignVec s = octant_signs(i, kernel.n);
        const OctantRange range = octant_abs_range(kernel.support, s, kernel.n);
        if (!range.empty) acc += octant_integral(kernel, family, s, range, T, h);
    }
    return acc;
}

AdmissibilityReport admissibility_from_log_table(const KernelSpec& kernel,
                                                 const AdmissibilityOptions& opts) {
    // In log coordinates the integrand is plain |Q|, so the bound is the sum
    // of the stored L1 norms; the tail ratio comes from the outermost band.
    AdmissibilityReport rep;
    double total = 0.0, band = 0.0;
    for (const auto& [s, q] : kernel.log_table->q) {
        const Grid& g = q.grid;
        for (std::size_t j = 0; j < (g.n == 2 ? g.axes[1].count : 1); ++j) {
            const double wj = g.n == 2 ? g.axes[1].weight(j) : 1.0;
            const bool edge1 =
                g.n == 2 && (j < g.axes[1].count / 20 || j >= g.axes[1].count - g.axes[1].count / 20);
            for (std::size_t i = 0; i < g.axes[0].count; ++i) {
                const double w = wj * g.axes[0].weight(i);
                const double v = std::abs(q.values[g.index(i, j)]);
                if (!std::isfinite(v))
                    throw NumericError("admissibility_check: non-finite log-kernel sample");
                total += w * v;
                const bool edge0 =
                    i < g.axes[0].count / 20 || i >= g.axes[0].count - g.axes[0].count / 20;
                if (edge0 || edge1) band += w * v;
            }
        }
    }
    rep.bound = total;
    rep.tail_ratio = total > 0.0 ? band / total : 0.0;
    rep.admissible = std::isfinite(total) && rep.tail_ratio < opts.tail_tolerance;
    return rep;
}

}  // namespace

AdmissibilityReport admissibility_check(const KernelSpec& kernel, const MatrixFamily& family,
                                        const AdmissibilityOptions& opts, Diagnostics* diag) {
    if (kernel.n != family.n) throw UsageError("admissibility_check: dimensions differ");
    if (kernel.log_table) return admissibility_from_log_table(kernel, opts);

    const double h = kernel.n == 1 ? opts.step_1d : opts.step_2d;
    AdmissibilityReport rep;
    double T = opts.core_half_width;
    double current = window_integral(kernel, family, T, h);
    double prev_inc = -1.0;
    int growth_streak = 0;
    rep.tail_ratio = 1.0;
    double last_inc = 0.0, last_ratio = 0.0;
    while (T < opts.max_half_width) {
        const double T2 = T + opts.block;
        const double next = window_integral(kernel, family, T2, h);
        const double inc = next - current;
        const double scale = std::max(next, 1e-300);
        if (next > 1e12) {
            rep.bound = std::numeric_limits<double>::infinity();
            rep.admissible = false;
            if (diag) diag->warn("admissibility: integral grows without bound");
            return rep;
        }
        if (prev_inc >= 0.0 && inc > prev_inc * 1.000001 && inc / scale > 1e-14) {
            if (++growth_streak >= 2) {
                rep.bound = std::numeric_limits<double>::infinity();
                rep.admissible = false;
                if (diag) diag->warn("admissibility: window increments keep growing (divergence)");
                return rep;
            }
        } else {
            growth_streak = 0;
        }
        last_ratio = prev_inc > 0.0 ? inc / prev_inc : 0.0;
        prev_inc = inc;
        last_inc = inc;
        current = next;
        T = T2;
        rep.tail_ratio = inc / scale;
        if (rep.tail_ratio < opts.tail_tolerance) break;
    }
    // geometric tail extrapolation
    double tail = 0.0;
    if (last_inc > 0.0 && last_ratio > 0.0 && last_ratio < 0.99)
        tail = last_inc * last_ratio / (1.0 - last_ratio);
    rep.bound = current + tail;
    const double refined = window_integral(kernel, family, T, 0.5 * h) + tail;
    rep.refinement_delta = std::abs(refined - rep.bound) / std::max(rep.bound, 1e-300);
    rep.bound = refined;
    rep.admissible = rep.tail_ratio < opts.tail_tolerance && std::isfinite(rep.bound);
    return rep;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

expr::ExprPtr parse1(const std::string& s) { return expr::parse(s, 1); }

std::shared_ptr<MatrixFamily> family_scale() {
    auto f = std::make_shared<MatrixFamily>();
    f->name = "scale";
    f->n = 1;
    f->a = {parse1("u")};
    f->positive_definite = true;
    MatrixFamily::PairMaps maps{{parse1("exp(t)")}, parse1("exp(t)")};
    f->pair_maps[{1, 1}] = maps;
    f->pair_maps[{2, 2}] = maps;
    return f;
}

std::shared_ptr<MatrixFamily> family_inverse_scale() {
    auto f = std::make_shared<MatrixFamily>();
    f->name = "inverse-scale";
    f->n = 1;
    f->a = {parse1("1/u")};
    f->positive_definite = true;
    MatrixFamily::PairMaps maps{{parse1("exp(-t)")}, parse1("-exp(-t)")};
    f->pair_maps[{1, 1}] = maps;
    f->pair_maps[{2, 2}] = maps;
    return f;
}

std::shared_ptr<MatrixFamily> family_line_dilation() {
    auto f = std::make_shared<MatrixFamily>();
    f->name = "line-dilation";
    f->n = 1;
    f->a = {parse1("u")};
    f->positive_definite = false;
    MatrixFamily::PairMaps plus{{parse1("exp(t)")}, parse1("exp(t)")};
    MatrixFamily::PairMaps minus{{parse1("-exp(t)")}, parse1("-exp(t)")};
    f->pair_maps[{1, 1}] = plus;
    f->pair_maps[{2, 2}] = plus;
    f->pair_maps[{1, 2}] = minus;
    f->pair_maps[{2, 1}] = minus;
    return f;
}

std::shared_ptr<MatrixFamily> family_diag2() {
    auto f = std::make_shared<MatrixFamily>();
    f->name = "diag-2d";
    f->n = 2;
    f->a = {expr::parse("u1", 2), expr::parse("u2", 2)};
    f->positive_definite = false;
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            const SignVec eps = octant_signature(i, j, 2);
            MatrixFamily::PairMaps maps;
            maps.b = {expr::parse(eps[0] > 0 ? "exp(t1)" : "-exp(t1)", 2),
                      expr::parse(eps[1] > 0 ? "exp(t2)" : "-exp(t2)", 2)};
            maps.jacobian =
                expr::parse(eps[0] * eps[1] > 0 ? "exp(t1+t2)" : "-exp(t1+t2)", 2);
            f->pair_maps[{i, j}] = std::move(maps);
        }
    }
    return f;
}

std::shared_ptr<MatrixFamily> make_family(const std::string& name) {
    if (name == "scale") return family_scale();
    if (name == "inverse-scale") return family_inverse_scale();
    if (name == "line-dilation") return family_line_dilation();
    if (name == "diag-2d") return family_diag2();
    throw UsageError("unknown family: " + name);
}

Support support_from_json(const nlohmann::json& j) {
    const std::string kind = j.value("kind", "full");
    if (kind == "full") return Support::full();
    if (kind == "positive") return Support::positive();
    if (kind == "box") {
        Support s;
        s.kind = Support::Kind::Box;
        const auto& box = j.at("box");
        for (std::size_t k = 0; k < box.size() && k < 2; ++k)
            s.box[k] = {box[k][0].get<double>(), box[k][1].get<double>()};
        return s;
    }
    throw UsageError("unknown support kind: " + kind);
}

std::pair<int, int> parse_pair_key(const std::string& key) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw UsageError("pair key must look like \"i,j\": " + key);
    return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
}

}  // namespace

Preset make_preset(const std::string& name, double alpha) {
    Preset p;
    p.name = name;
    if (name == "cesaro") {
        p.kernel = KernelSpec::from_expression("chi(0,1)(u)", 1, Support::box1(0.0, 1.0));
        p.family = family_scale();
        return p;
    }
    if (name == "boyd") {
        if (!(alpha < 0.5))
            throw NumericError("boyd preset requires alpha < 1/2 for L2 boundedness");
        p.kernel = KernelSpec::from_expression("chi(0,1)(u) * u^(" + fmt(-alpha) + ")", 1,
                                               Support::box1(0.0, 1.0));
        p.family = family_scale();
        return p;
    }
    if (name == "calderon") {
        p.kernel = KernelSpec::from_expression("1/(u*max(1,u))", 1, Support::positive());
        p.family = family_inverse_scale();
        return p;
    }
    if (name == "dilation-diag-2d") {
        p.kernel = KernelSpec::from_expression("exp(-(u1^2+u2^2))", 2, Support::full());
        p.family = family_diag2();
        return p;
    }
    if (name == "negbox") {
        p.kernel = KernelSpec::from_expression("chi(-1,0)(u)", 1, Support::box1(-1.0, 0.0));
        p.family = family_line_dilation();
        return p;
    }
    throw UsageError("unknown preset: " + name);
}

Preset load_definition_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("malformed definition JSON: ") + e.what());
    }
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 2) throw UsageError("definition: n must be 1 or 2");

    Preset p;
    p.name = j.value("name", "custom");

    // family first: a kernel preset may supply one
    std::shared_ptr<const MatrixFamily> family;
    if (j.contains("family")) {
        const auto& jf = j.at("family");
        if (jf.is_string()) {
            family = make_family(jf.get<std::string>());
        } else {
            auto f = std::make_shared<MatrixFamily>();
            f->name = jf.value("name", "custom");
            f->n = n;
            for (const auto& e : jf.at("a")) f->a.push_back(expr::parse(e.get<std::string>(), n));
            f->positive_definite = jf.value("positive_definite", false);
            if (jf.contains("conjugator")) {
                std::array<std::array<double, 2>, 2> c{};
                const auto& jc = jf.at("conjugator");
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) c[r][s] = jc[r][s].get<double>();
                f->conjugator = c;
            }
            if (jf.contains("b") != jf.contains("jac"))
                throw UsageError("definition: b and jac must be given together");
            if (jf.contains("b")) {
                for (const auto& [key, val] : jf.at("b").items()) {
                    MatrixFamily::PairMaps maps;
                    for (const auto& e : val) maps.b.push_back(expr::parse(e.get<std::string>(), n));
                    maps.jacobian = expr::parse(jf.at("jac").at(key).get<std::string>(), n);
                    f->pair_maps[parse_pair_key(key)] = std::move(maps);
                }
            }
            f->validate();
            family = f;
        }
    }

    const auto& jk = j.at("kernel");
    const std::string kind = jk.at("kind").get<std::string>();
    if (kind == "preset") {
        Preset base = make_preset(jk.at("preset").get<std::string>(), jk.value("alpha", 0.0));
        p.kernel = base.kernel;
        if (!family) family = base.family;
    } else if (kind == "expr") {
        const Support s = jk.contains("support") ? support_from_json(jk.at("support"))
                                                 : Support::full();
        p.kernel = KernelSpec::from_expression(jk.at("expr").get<std::string>(), n, s);
    } else if (kind == "tabulated") {
        const Support s = jk.contains("support") ? support_from_json(jk.at("support"))
                                                 : Support::full();
        p.kernel = KernelSpec::from_table(io::read_csv(jk.at("path").get<std::string>()), s);
        if (p.kernel.n != n) throw UsageError("definition: tabulated kernel dimension mismatch");
    } else {
        throw UsageError("unknown kernel kind: " + kind);
    }
    if (!family) throw UsageError("definition: family required");
    p.family = family;
    return p;
}

Preset load_definition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_definition_json(ss.str());
}

}  // namespace hausdorff
