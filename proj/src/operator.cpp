#include "hausdorff/operator.hpp"

#include <cmath>
#include <cstdint>

namespace hausdorff {

namespace {

struct AxisCells {
    double lo = 0.0, step = 0.0;
    std::size_t cells = 0;
};

AxisCells midpoint_cells(double lo, double hi, double step_hint) {
    AxisCells ax;
    if (!(hi > lo)) return ax;
    ax.cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / step_hint - 1e-12)));
    ax.lo = lo;
    ax.step = (hi - lo) / static_cast<double>(ax.cells);
    return ax;
}

}  // namespace

UQuadrature UQuadrature::build(const Support& support, const MatrixFamily& family,
                               const QuadratureSettings& quad) {
    UQuadrature q;
    const int n = family.n;
    q.n = n;
    if (family.positive_definite) {
        const double T = quad.log_half_width;
        AxisCells ax[2];
        for (int k = 0; k < n; ++k) {
            double lo = -T, hi = T;
            if (support.kind == Support::Kind::Box) {
                const auto [blo, bhi] = support.box[k];
                if (!(bhi > 0)) return q;  // no mass in the positive orthant
                if (blo > 0) lo = std::max(lo, std::log(blo));
                hi = std::min(hi, std::log(bhi));
            }
            ax[k] = midpoint_cells(lo, hi, quad.log_step);
            if (ax[k].cells == 0) return q;
        }
        for (std::size_t c1 = 0; c1 < (n == 2 ? ax[1].cells : 1); ++c1) {
            const double v1 = n == 2 ? ax[1].lo + ax[1].step * (static_cast<double>(c1) + 0.5) : 0.0;
            for (std::size_t c0 = 0; c0 < ax[0].cells; ++c0) {
                const double v0 = ax[0].lo + ax[0].step * (static_cast<double>(c0) + 0.5);
                const double u0 = std::exp(v0);
                q.nodes.push_back(u0);
                double w = ax[0].step * u0;
                if (n == 2) {
                    const double u1 = std::exp(v1);
                    q.nodes.push_back(u1);
                    w *= ax[1].step * u1;
                }
                q.weights.push_back(w);
            }
        }
        return q;
    }
    const double U = quad.uniform_half_width;
    AxisCells ax[2];
    for (int k = 0; k < n; ++k) {
        double lo = -U, hi = U;
        if (support.kind == Support::Kind::PositiveOctant) lo = 0.0;
        if (support.kind == Support::Kind::Box) {
            lo = std::max(lo, support.box[k].first);
            hi = std::min(hi, support.box[k].second);
        }
        ax[k] = midpoint_cells(lo, hi, quad.uniform_step);
        if (ax[k].cells == 0) return q;
    }
    for (std::size_t c1 = 0; c1 < (n == 2 ? ax[1].cells : 1); ++c1) {
        const double u1 = n == 2 ? ax[1].lo + ax[1].step * (static_cast<double>(c1) + 0.5) : 0.0;
        for (std::size_t c0 = 0; c0 < ax[0].cells; ++c0) {
            q.nodes.push_back(ax[0].lo + ax[0].step * (static_cast<double>(c0) + 0.5));
            double w = ax[0].step;
            if (n == 2) {
                q.nodes.push_back(u1);
                w *= ax[1].step;
            }
            q.weights.push_back(w);
        }
    }
    return q;
}

OperatorSpec make_operator(KernelSpec kernel, std::shared_ptr<const MatrixFamily> family,
                           QuadratureSettings quad, const AdmissibilityOptions& adm) {
    if (!family) throw UsageError("make_operator: null family");
    if (kernel.n != family->n) throw UsageError("make_operator: dimensions differ");
    const AdmissibilityReport rep = admissibility_check(kernel, *family, adm);
    if (!rep.admissible)
        throw NumericError("operator is not admissible (bound estimate " +
                           std::to_string(rep.bound) + ", tail ratio " +
                           std::to_string(rep.tail_ratio) + ")");
    OperatorSpec op;
    op.kernel = std::move(kernel);
    op.family = std::move(family);
    op.quad = quad;
    op.admissibility_bound = rep.bound;
    op.admissibility_tail = rep.tail_ratio;
    return op;
}

OperatorSpec make_operator(const Preset& preset, QuadratureSettings quad,
                           const AdmissibilityOptions& adm) {
    return make_operator(preset.kernel, preset.family, quad, adm);
}

namespace {

// Per-node data precomputed for the x-sweep.
struct NodeData {
    std::vector<double> wk;   // weight * K(u)
    std::vector<double> mat;  // n==1: a; n==2: a0,a1 or the full 2x2 matrix
    bool full_matrix = false;
    double abs_mass = 0.0;  // sum |wk|
};

NodeData precompute(const OperatorSpec& op, const UQuadrature& quad) {
    NodeData d;
    const int n = op.family->n;
    d.full_matrix = n == 2 && op.family->conjugator.has_value();
    const std::size_t per = d.full_matrix ? 4 : static_cast<std::size_t>(n);
    d.wk.reserve(quad.size());
    d.mat.reserve(quad.size() * per);
    double ev[2];
    for (std::size_t qi = 0; qi < quad.size(); ++qi) {
        const double* u = quad.nodes.data() + qi * static_cast<std::size_t>(n);
        const std::span<const double> us(u, static_cast<std::size_t>(n));
        const double kv = op.kernel.eval(us);
        const double w = quad.weights[qi] * kv;
        if (w == 0.0) continue;
        if (!std::isfinite(w)) throw NumericError("apply: kernel evaluation failed at a node");
        d.wk.push_back(w);
        d.abs_mass += std::abs(w);
        op.family->eigenvalues(us, ev);
        if (d.full_matrix) {
            const auto& c = *op.family->conjugator;
            // C diag(ev) C^T
            d.mat.push_back(c[0][0] * ev[0] * c[0][0] + c[0][1] * ev[1] * c[0][1]);
            d.mat.push_back(c[0][0] * ev[0] * c[1][0] + c[0][1] * ev[1] * c[1][1]);
            d.mat.push_back(c[1][0] * ev[0] * c[0][0] + c[1][1] * ev[1] * c[0][1]);
            d.mat.push_back(c[1][0] * ev[0] * c[1][0] + c[1][1] * ev[1] * c[1][1]);
        } else {
            for (int k = 0; k < n; ++k) d.mat.push_back(ev[k]);
        }
    }
    return d;
}

// Interpolation at the hull-clamped point; used to estimate the mass that
// extension by zero discarded.
Complex clamped_value(const SampledFunction& f, const double* y, int n) {
    double c[2];
    for (int k = 0; k < n; ++k) {
        const Axis& ax = f.grid.axes[k];
        double v = y[k];
        if (ax.half_line && !(v > 0)) v = ax.min;
        c[k] = std::clamp(v, ax.min, ax.max);
    }
    return interpolate(f, std::span<const double>(c, static_cast<std::size_t>(n)));
}

SampledFunction apply_impl(const OperatorSpec& op, const SampledFunction& f, const Grid& x_grid,
                           Diagnostics* diag, bool parallel) {
    if (f.values.empty() || f.values.size() != f.grid.size())
        throw UsageError("apply: empty or inconsistent input function");
    if (f.grid.n != op.family->n || x_grid.n != op.family->n)
        throw UsageError("apply: dimension mismatch");
    const UQuadrature quad = UQuadrature::build(op.kernel.support, *op.family, op.quad);
    const NodeData d = precompute(op, quad);
    const int n = op.family->n;

    SampledFunction out(x_grid);
    const std::size_t nx0 = x_grid.axes[0].count;
    const std::int64_t total = static_cast<std::int64_t>(x_grid.size());
    double dropped = 0.0, retained = 0.0;
    std::uint64_t ood = 0;

#pragma omp parallel for schedule(static) reduction(+ : dropped, retained, ood) if (parallel)
    for (std::int64_t xi = 0; xi < total; ++xi) {
        double x[2] = {0.0, 0.0}, y[2] = {0.0, 0.0};
        const std::size_t i0 = static_cast<std::size_t>(xi) % nx0;
        const std::size_t i1 = static_cast<std::size_t>(xi) / nx0;
        x[0] = x_grid.axes[0].coord(i0);
        if (n == 2) x[1] = x_grid.axes[1].coord(i1);
        Complex acc(0.0);
        Diagnostics local;
        for (std::size_t q = 0; q < d.wk.size(); ++q) {
            if (d.full_matrix) {
                const double* m = d.mat.data() + 4 * q;
                y[0] = m[0] * x[0] + m[1] * x[1];
                y[1] = m[2] * x[0] + m[3] * x[1];
            } else {
                const double* m = d.mat.data() + static_cast<std::size_t>(n) * q;
                y[0] = m[0] * x[0];
                if (n == 2) y[1] = m[1] * x[1];
            }
            const std::uint64_t before = local.out_of_domain_evals;
            const Complex fv = interpolate(f, std::span<const double>(y, static_cast<std::size_t>(n)), &local);
            if (local.out_of_domain_evals != before) {
                dropped += std::abs(d.wk[q]) * std::abs(clamped_value(f, y, n));
                retained += std::abs(d.wk[q]) * std::abs(clamped_value(f, y, n));
            } else {
                retained += std::abs(d.wk[q]) * std::abs(fv);
                acc += d.wk[q] * fv;
            }
        }
        ood += local.out_of_domain_evals;
        out.values[xi] = acc;
    }

    const double fraction = retained > 0.0 ? dropped / retained : 0.0;
    if (diag) {
        diag->out_of_domain_evals += ood;
        diag->out_of_domain_mass += fraction;
        diag->error_estimate += fraction + op.admissibility_tail;
    }
    if (fraction > 0.10)
        throw NumericError("apply: " + std::to_string(100.0 * fraction) +
                           "% of the integrand mass falls outside the sampled grid of f");
    return out;
}

}  // namespace

SampledFunction apply(const OperatorSpec& op, const SampledFunction& f, const Grid& x_grid,
                      Diagnostics* diag) {
    return apply_impl(op, f, x_grid, diag, true);
}

SampledFunction apply_iterated(const OperatorSpec& op, int l, const SampledFunction& f,
                               const Grid& x_grid, Diagnostics* diag) {
    if (l < 1) throw UsageError("apply_iterated: l must be positive");
    SampledFunction cur = f;
    for (int it = 0; it < l; ++it) {
        Diagnostics step;
        cur = apply(op, cur, x_grid, &step);
        if (diag) {
            diag->merge(step);
            diag->error_estimate += step.out_of_domain_mass;
        }
    }
    return cur;
}

namespace ref {

SampledFunction apply(const OperatorSpec& op, const SampledFunction& f, const Grid& x_grid,
                      Diagnostics* diag) {
    return apply_impl(op, f, x_grid, diag, false);
}

}  // namespace ref

}  // namespace hausdorff
