#include "hausdorff/transforms.hpp"

#include <cmath>
#include <cstdint>

namespace hausdorff {

namespace {

void check_transform_input(const SampledFunction& g, const Grid& out_grid, const char* what) {
    if (g.values.empty() || g.values.size() != g.grid.size())
        throw UsageError(std::string(what) + ": empty or inconsistent input");
    if (g.grid.n != out_grid.n)
        throw UsageError(std::string(what) + ": input and output dimensions differ");
    for (int k = 0; k < g.grid.n; ++k)
        if (g.grid.axes[k].half_line || out_grid.axes[k].half_line)
            throw NumericError(std::string(what) + ": uniform (full-line) axes required");
}

double boundary_max(const SampledFunction& g) {
    const Grid& gr = g.grid;
    double m = 0.0;
    if (gr.n == 1) {
        m = std::max(std::abs(g.values.front()), std::abs(g.values.back()));
    } else {
        const std::size_t n0 = gr.axes[0].count, n1 = gr.axes[1].count;
        for (std::size_t i = 0; i < n0; ++i)
            m = std::max({m, std::abs(g.at(i, 0)), std::abs(g.at(i, n1 - 1))});
        for (std::size_t j = 0; j < n1; ++j)
            m = std::max({m, std::abs(g.at(0, j)), std::abs(g.at(n0 - 1, j))});
    }
    return m;
}

void warn_decay(const SampledFunction& g, double rel_threshold, const char* what,
                Diagnostics* diag) {
    if (!diag) return;
    const double m = max_abs(g);
    if (m > 0.0 && boundary_max(g) > rel_threshold * m)
        diag->warn(std::string(what) + ": input has not decayed at the grid boundary");
}

// acc = h * sum_k w_k v[k*stride] exp(i*sign*s*t_k) with trapezoidal w_k.
// Phase recurrence with periodic resynchronisation.
Complex weighted_exp_sum(const Complex* v, std::size_t stride, std::size_t count, double t0,
                         double h, double s, double sign) {
    const double ang_step = sign * s * h;
    const Complex rot(std::cos(ang_step), std::sin(ang_step));
    Complex acc(0.0);
    Complex ph(1.0);
    constexpr std::size_t kResync = 512;
    for (std::size_t k = 0; k < count; ++k) {
        if (k % kResync == 0) {
            const double ang = sign * s * (t0 + h * static_cast<double>(k));
            ph = Complex(std::cos(ang), std::sin(ang));
        }
        const double w = (k == 0 || k + 1 == count) ? 0.5 : 1.0;
        acc += (w * ph) * v[k * stride];
        ph *= rot;
    }
    return h * acc;
}

SampledFunction transform(const SampledFunction& g, const Grid& out_grid, double sign,
                          double scale) {
    const Grid& in = g.grid;
    SampledFunction out(out_grid);
    if (in.n == 1) {
        const Axis& t = in.axes[0];
        const Axis& s = out_grid.axes[0];
        const double h = t.param_step();
        const std::int64_t ns = static_cast<std::int64_t>(s.count);
#pragma omp parallel for schedule(static)
        for (std::int64_t a = 0; a < ns; ++a) {
            const double sv = s.coord(static_cast<std::size_t>(a));
            out.values[a] = scale * weighted_exp_sum(g.values.data(), 1, t.count, t.min, h, sv, sign);
        }
        return out;
    }

    // Two separable passes; identical to the tensor-product trapezoidal sum.
    const Axis& t0 = in.axes[0];
    const Axis& t1 = in.axes[1];
    const Axis& s0 = out_grid.axes[0];
    const Axis& s1 = out_grid.axes[1];
    const double h0 = t0.param_step(), h1 = t1.param_step();

    // pass 1: axis 0 -> s0, for every t1 row
    std::vector<Complex> mid(s0.count * t1.count);
    const std::int64_t pass1 = static_cast<std::int64_t>(s0.count * t1.count);
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < pass1; ++idx) {
        const std::size_t a = static_cast<std::size_t>(idx) % s0.count;
        const std::size_t j = static_cast<std::size_t>(idx) / s0.count;
        mid[idx] = weighted_exp_sum(g.values.data() + j * t0.count, 1, t0.count, t0.min, h0,
                                    s0.coord(a), sign);
    }
    // pass 2: axis 1 -> s1
    const std::int64_t pass2 = static_cast<std::int64_t>(s0.count * s1.count);
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < pass2; ++idx) {
        const std::size_t a = static_cast<std::size_t>(idx) % s0.count;
        const std::size_t b = static_cast<std::size_t>(idx) / s0.count;
        out.values[idx] = scale * weighted_exp_sum(mid.data() + a, s0.count, t1.count, t1.min, h1,
                                                   s1.coord(b), sign);
    }
    return out;
}

struct ConvAxis {
    double base;  // coordinate of output node 0 before truncation
    double h;
    std::size_t full;      // full sum-support node count
    std::size_t lo, count; // retained range after truncation
};

ConvAxis conv_axis(const Axis& a, const Axis& b, double window, const char* what) {
    if (a.half_line || b.half_line) throw NumericError(std::string(what) + ": uniform axes required");
    const double ha = a.param_step(), hb = b.param_step();
    if (std::abs(ha - hb) > 1e-12 * std::max(ha, hb))
        throw NumericError(std::string(what) + ": grid spacings differ");
    ConvAxis ax;
    ax.h = ha;
    ax.base = a.min + b.min;
    ax.full = a.count + b.count - 1;
    ax.lo = 0;
    ax.count = ax.full;
    if (window > 0.0) {
        const double eps = 1e-9 * ax.h;
        const double lo_c = std::max(ax.base, -window);
        const double hi_c = std::min(ax.base + ax.h * static_cast<double>(ax.full - 1), window);
        if (lo_c > hi_c) throw UsageError(std::string(what) + ": truncation window is empty");
        ax.lo = static_cast<std::size_t>(std::ceil((lo_c - ax.base) / ax.h - eps));
        const std::size_t hi = static_cast<std::size_t>(std::floor((hi_c - ax.base) / ax.h + eps));
        ax.count = hi - ax.lo + 1;
    }
    return ax;
}

template <typename T>
void conv_core(const std::vector<T>& fa, const Grid& ga, const std::vector<T>& fb, const Grid& gb,
               const ConvAxis& ax0, const ConvAxis* ax1, double scale, std::vector<Complex>& out) {
    const std::size_t na0 = ga.axes[0].count, nb0 = gb.axes[0].count;
    if (!ax1) {
        const std::int64_t m = static_cast<std::int64_t>(ax0.count);
#pragma omp parallel for schedule(static)
        for (std::int64_t mm = 0; mm < m; ++mm) {
            const std::size_t j = ax0.lo + static_cast<std::size_t>(mm);
            const std::size_t k0 = j >= nb0 - 1 ? j - (nb0 - 1) : 0;
            const std::size_t k1 = std::min(na0 - 1, j);
            T acc{};
            for (std::size_t k = k0; k <= k1; ++k) acc += fa[k] * fb[j - k];
            out[mm] = scale * acc;
        }
        return;
    }
    const std::size_t na1 = ga.axes[1].count, nb1 = gb.axes[1].count;
    const std::int64_t total = static_cast<std::int64_t>(ax0.count * ax1->count);
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const std::size_t j0 = ax0.lo + static_cast<std::size_t>(idx) % ax0.count;
        const std::size_t j1 = ax1->lo + static_cast<std::size_t>(idx) / ax0.count;
        const std::size_t p0 = j0 >= nb0 - 1 ? j0 - (nb0 - 1) : 0;
        const std::size_t p1 = std::min(na0 - 1, j0);
        const std::size_t q0 = j1 >= nb1 - 1 ? j1 - (nb1 - 1) : 0;
        const std::size_t q1 = std::min(na1 - 1, j1);
        T acc{};
        for (std::size_t q = q0; q <= q1; ++q) {
            const T* fr = fa.data() + q * na0;
            const T* gr = fb.data() + (j1 - q) * nb0;
            for (std::size_t p = p0; p <= p1; ++p) acc += fr[p] * gr[j0 - p];
        }
        out[idx] = scale * acc;
    }
}

}  // namespace

SampledFunction fourier_forward(const SampledFunction& g, const Grid& s_grid, Diagnostics* diag) {
    check_transform_input(g, s_grid, "fourier_forward");
    warn_decay(g, 1e-12, "fourier_forward", diag);
    return transform(g, s_grid, -1.0, 1.0);
}

SampledFunction fourier_inverse(const SampledFunction& ghat, const Grid& t_grid,
                                Diagnostics* diag) {
    check_transform_input(ghat, t_grid, "fourier_inverse");
    warn_decay(ghat, 1e-6, "fourier_inverse", diag);
    const double scale = ghat.grid.n == 1 ? 1.0 / kTwoPi : 1.0 / (kTwoPi * kTwoPi);
    return transform(ghat, t_grid, +1.0, scale);
}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g, double window,
                         Diagnostics* diag) {
    if (f.values.empty() || g.values.empty()) throw UsageError("convolve: empty input");
    if (f.grid.n != g.grid.n) throw UsageError("convolve: dimensions differ");
    (void)diag;
    const int n = f.grid.n;
    const ConvAxis ax0 = conv_axis(f.grid.axes[0], g.grid.axes[0], window, "convolve");
    ConvAxis ax1{};
    Grid out_grid;
    if (n == 1) {
        out_grid = Grid::line(ax0.base + ax0.h * static_cast<double>(ax0.lo),
                              ax0.base + ax0.h * static_cast<double>(ax0.lo + ax0.count - 1),
                              ax0.count);
    } else {
        ax1 = conv_axis(f.grid.axes[1], g.grid.axes[1], window, "convolve");
        out_grid = Grid::plane(Axis(ax0.base + ax0.h * static_cast<double>(ax0.lo),
                                    ax0.base + ax0.h * static_cast<double>(ax0.lo + ax0.count - 1),
                                    ax0.count),
                               Axis(ax1.base + ax1.h * static_cast<double>(ax1.lo),
                                    ax1.base + ax1.h * static_cast<double>(ax1.lo + ax1.count - 1),
                                    ax1.count));
    }
    SampledFunction out(out_grid);
    const double scale = n == 1 ? ax0.h : ax0.h * ax1.h;
    if (f.is_real() && g.is_real()) {
        std::vector<double> fr(f.values.size()), gr(g.values.size());
        for (std::size_t k = 0; k < fr.size(); ++k) fr[k] = f.values[k].real();
        for (std::size_t k = 0; k < gr.size(); ++k) gr[k] = g.values[k].real();
        conv_core<double>(fr, f.grid, gr, g.grid, ax0, n == 2 ? &ax1 : nullptr, scale, out.values);
    } else {
        conv_core<Complex>(f.values, f.grid, g.values, g.grid, ax0, n == 2 ? &ax1 : nullptr, scale,
                           out.values);
    }
    return out;
}

namespace ref {

SampledFunction fourier_forward(const SampledFunction& g, const Grid& s_grid) {
    check_transform_input(g, s_grid, "ref::fourier_forward");
    SampledFunction out(s_grid);
    const Grid& in = g.grid;
    double s[2], t[2];
    for (std::size_t b = 0; b < (in.n == 2 ? s_grid.axes[1].count : 1); ++b) {
        if (in.n == 2) s[1] = s_grid.axes[1].coord(b);
        for (std::size_t a = 0; a < s_grid.axes[0].count; ++a) {
            s[0] = s_grid.axes[0].coord(a);
            Complex acc(0.0);
            for (std::size_t j = 0; j < (in.n == 2 ? in.axes[1].count : 1); ++j) {
                if (in.n == 2) t[1] = in.axes[1].coord(j);
                for (std::size_t i = 0; i < in.axes[0].count; ++i) {
                    t[0] = in.axes[0].coord(i);
                    double w = in.axes[0].weight(i);
                    double phase = -s[0] * t[0];
                    if (in.n == 2) {
                        w *= in.axes[1].weight(j);
                        phase -= s[1] * t[1];
                    }
                    acc += w * g.values[in.index(i, j)] * std::exp(Complex(0.0, phase));
                }
            }
            out.values[s_grid.index(a, b)] = acc;
        }
    }
    return out;
}

SampledFunction fourier_inverse(const SampledFunction& ghat, const Grid& t_grid) {
    check_transform_input(ghat, t_grid, "ref::fourier_inverse");
    SampledFunction out(t_grid);
    const Grid& in = ghat.grid;
    const double scale = in.n == 1 ? 1.0 / kTwoPi : 1.0 / (kTwoPi * kTwoPi);
    double s[2], t[2];
    for (std::size_t b = 0; b < (in.n == 2 ? t_grid.axes[1].count : 1); ++b) {
        if (in.n == 2) t[1] = t_grid.axes[1].coord(b);
        for (std::size_t a = 0; a < t_grid.axes[0].count; ++a) {
            t[0] = t_grid.axes[0].coord(a);
            Complex acc(0.0);
            for (std::size_t j = 0; j < (in.n == 2 ? in.axes[1].count : 1); ++j) {
                if (in.n == 2) s[1] = in.axes[1].coord(j);
                for (std::size_t i = 0; i < in.axes[0].count; ++i) {
                    s[0] = in.axes[0].coord(i);
                    double w = in.axes[0].weight(i);
                    double phase = s[0] * t[0];
                    if (in.n == 2) {
                        w *= in.axes[1].weight(j);
                        phase += s[1] * t[1];
                    }
                    acc += w * ghat.values[in.index(i, j)] * std::exp(Complex(0.0, phase));
                }
            }
            out.values[t_grid.index(a, b)] = scale * acc;
        }
    }
    return out;
}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g, double window) {
    if (f.values.empty() || g.values.empty()) throw UsageError("convolve: empty input");
    if (f.grid.n != g.grid.n) throw UsageError("convolve: dimensions differ");
    const int n = f.grid.n;
    const ConvAxis ax0 = conv_axis(f.grid.axes[0], g.grid.axes[0], window, "convolve");
    if (n == 1) {
        SampledFunction out(Grid::line(ax0.base + ax0.h * static_cast<double>(ax0.lo),
                                       ax0.base + ax0.h * static_cast<double>(ax0.lo + ax0.count - 1),
                                       ax0.count));
        for (std::size_t m = 0; m < ax0.count; ++m) {
            const std::size_t j = ax0.lo + m;
            Complex acc(0.0);
            for (std::size_t k = 0; k < f.grid.axes[0].count; ++k) {
                if (j < k) break;
                const std::size_t l = j - k;
                if (l >= g.grid.axes[0].count) continue;
                acc += f.values[k] * g.values[l];
            }
            out.values[m] = ax0.h * acc;
        }
        return out;
    }
    const ConvAxis ax1 = conv_axis(f.grid.axes[1], g.grid.axes[1], window, "convolve");
    SampledFunction out(
        Grid::plane(Axis(ax0.base + ax0.h * static_cast<double>(ax0.lo),
                         ax0.base + ax0.h * static_cast<double>(ax0.lo + ax0.count - 1), ax0.count),
                    Axis(ax1.base + ax1.h * static_cast<double>(ax1.lo),
                         ax1.base + ax1.h * static_cast<double>(ax1.lo + ax1.count - 1), ax1.count)));
    for (std::size_t m1 = 0; m1 < ax1.count; ++m1) {
        for (std::size_t m0 = 0; m0 < ax0.count; ++m0) {
            const std::size_t j0 = ax0.lo + m0, j1 = ax1.lo + m1;
            Complex acc(0.0);
            for (std::size_t q = 0; q < f.grid.axes[1].count; ++q) {
                if (j1 < q) break;
                const std::size_t l1 = j1 - q;
                if (l1 >= g.grid.axes[1].count) continue;
                for (std::size_t p = 0; p < f.grid.axes[0].count; ++p) {
                    if (j0 < p) break;
                    const std::size_t l0 = j0 - p;
                    if (l0 >= g.grid.axes[0].count) continue;
                    acc += f.at(p, q) * g.at(l0, l1);
                }
            }
            out.values[out.grid.index(m0, m1)] = ax0.h * ax1.h * acc;
        }
    }
    return out;
}

}  // namespace ref

}  // namespace hausdorff
