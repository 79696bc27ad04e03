#include "hausdorff/grid.hpp"

#include <algorithm>
#include <cmath>

namespace hausdorff {

Axis::Axis(double min_, double max_, std::size_t count_, bool half_line_)
    : min(min_), max(max_), count(count_), half_line(half_line_) {
    if (!(min < max)) throw UsageError("axis: min must be smaller than max");
    if (count < 2) throw UsageError("axis: at least two sample points required");
    if (half_line && !(min > 0.0)) throw UsageError("axis: half-line axis requires min > 0");
    if (!std::isfinite(min) || !std::isfinite(max)) throw UsageError("axis: non-finite bounds");
}

double Axis::param_min() const { return half_line ? std::log(min) : min; }

double Axis::param_step() const {
    const double pmax = half_line ? std::log(max) : max;
    return (pmax - param_min()) / static_cast<double>(count - 1);
}

double Axis::coord(std::size_t i) const {
    const double p = param_min() + param_step() * static_cast<double>(i);
    return half_line ? std::exp(p) : p;
}

double Axis::weight(std::size_t i) const {
    const double h = param_step();
    double w = (i == 0 || i + 1 == count) ? 0.5 * h : h;
    if (half_line) w *= coord(i);  // du = u dv
    return w;
}

Grid Grid::line(double min, double max, std::size_t count, bool half_line) {
    Grid g;
    g.n = 1;
    g.axes[0] = Axis(min, max, count, half_line);
    return g;
}

Grid Grid::plane(const Axis& a0, const Axis& a1) {
    Grid g;
    g.n = 2;
    g.axes[0] = a0;
    g.axes[1] = a1;
    return g;
}

SampledFunction SampledFunction::sample(
    const Grid& g, const std::function<Complex(std::span<const double>)>& f) {
    SampledFunction out(g);
    double x[2];
    if (g.n == 1) {
        for (std::size_t i = 0; i < g.axes[0].count; ++i) {
            x[0] = g.axes[0].coord(i);
            out.values[i] = f(std::span<const double>(x, 1));
        }
    } else {
        for (std::size_t j = 0; j < g.axes[1].count; ++j) {
            x[1] = g.axes[1].coord(j);
            for (std::size_t i = 0; i < g.axes[0].count; ++i) {
                x[0] = g.axes[0].coord(i);
                out.values[g.index(i, j)] = f(std::span<const double>(x, 2));
            }
        }
    }
    return out;
}

bool SampledFunction::is_real() const {
    for (const Complex& v : values)
        if (v.imag() != 0.0) return false;
    return true;
}

namespace {

// Locate x on an axis; returns false when outside the hull.
bool locate(const Axis& ax, double x, std::size_t& i, double& frac) {
    double p;
    if (ax.half_line) {
        if (!(x > 0.0)) return false;
        p = (std::log(x) - ax.param_min()) / ax.param_step();
    } else {
        p = (x - ax.min) / ax.param_step();
    }
    const double top = static_cast<double>(ax.count - 1);
    const double slack = 1e-9;
    if (p < -slack || p > top + slack) return false;
    p = std::clamp(p, 0.0, top);
    i = std::min(static_cast<std::size_t>(p), ax.count - 2);
    frac = p - static_cast<double>(i);
    return true;
}

}  // namespace

Complex interpolate(const SampledFunction& f, std::span<const double> x, Diagnostics* diag) {
    const Grid& g = f.grid;
    if (static_cast<int>(x.size()) != g.n)
        throw UsageError("interpolate: point dimension does not match grid");
    for (double xv : x)
        if (!std::isfinite(xv)) throw NumericError("interpolate: non-finite coordinate");

    std::size_t i0, i1 = 0;
    double f0, f1 = 0.0;
    if (!locate(g.axes[0], x[0], i0, f0) || (g.n == 2 && !locate(g.axes[1], x[1], i1, f1))) {
        if (diag) ++diag->out_of_domain_evals;
        return Complex(0.0);
    }
    if (g.n == 1) return (1.0 - f0) * f.values[i0] + f0 * f.values[i0 + 1];
    const Complex v00 = f.at(i0, i1), v10 = f.at(i0 + 1, i1);
    const Complex v01 = f.at(i0, i1 + 1), v11 = f.at(i0 + 1, i1 + 1);
    return (1.0 - f1) * ((1.0 - f0) * v00 + f0 * v10) + f1 * ((1.0 - f0) * v01 + f0 * v11);
}

double norm_l2(const SampledFunction& f) {
    const Grid& g = f.grid;
    double acc = 0.0;
    if (g.n == 1) {
        for (std::size_t i = 0; i < g.axes[0].count; ++i)
            acc += g.axes[0].weight(i) * std::norm(f.values[i]);
    } else {
        for (std::size_t j = 0; j < g.axes[1].count; ++j) {
            const double wj = g.axes[1].weight(j);
            for (std::size_t i = 0; i < g.axes[0].count; ++i)
                acc += wj * g.axes[0].weight(i) * std::norm(f.at(i, j));
        }
    }
    return std::sqrt(acc);
}

double distance_linf(const SampledFunction& f, const SampledFunction& g) {
    if (!(f.grid == g.grid)) throw UsageError("distance_linf: grids differ");
    double m = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        m = std::max(m, std::abs(f.values[k] - g.values[k]));
    return m;
}

double rel_l2(const SampledFunction& f, const SampledFunction& g) {
    const double den = norm_l2(g);
    if (den == 0.0) return norm_l2(f) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return norm_l2(f - g) / den;
}

double rel_linf(const SampledFunction& f, const SampledFunction& g) {
    const double den = max_abs(g);
    if (den == 0.0) return max_abs(f) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return distance_linf(f, g) / den;
}

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
    if (!(a.grid == b.grid)) throw UsageError("sampled function sum: grids differ");
    SampledFunction out(a.grid);
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = a.values[k] + b.values[k];
    return out;
}

SampledFunction operator-(const SampledFunction& a, const SampledFunction& b) {
    if (!(a.grid == b.grid)) throw UsageError("sampled function difference: grids differ");
    SampledFunction out(a.grid);
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = a.values[k] - b.values[k];
    return out;
}

SampledFunction operator*(Complex c, const SampledFunction& a) {
    SampledFunction out(a.grid);
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = c * a.values[k];
    return out;
}

SampledFunction pointwise_product(const SampledFunction& a, const SampledFunction& b) {
    if (!(a.grid == b.grid)) throw UsageError("pointwise product: grids differ");
    SampledFunction out(a.grid);
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = a.values[k] * b.values[k];
    return out;
}

double max_abs(const SampledFunction& f) {
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace hausdorff
