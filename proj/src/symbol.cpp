#include "hausdorff/symbol.hpp"

#include <cmath>
#include <cstdint>

#include "hausdorff/transforms.hpp"

namespace hausdorff {

const SampledFunction& SymbolMatrix::at(int i, int j) const {
    if (i < 1 || j < 1 || i > size || j > size) throw UsageError("symbol entry out of range");
    return entries[static_cast<std::size_t>((i - 1) * size + (j - 1))];
}

SampledFunction& SymbolMatrix::at(int i, int j) {
    if (i < 1 || j < 1 || i > size || j > size) throw UsageError("symbol entry out of range");
    return entries[static_cast<std::size_t>((i - 1) * size + (j - 1))];
}

SymbolMatrix SymbolMatrix::scalar(SampledFunction phi) {
    SymbolMatrix m;
    m.n = phi.grid.n;
    m.size = 1;
    m.s_grid = phi.grid;
    m.entries.push_back(std::move(phi));
    return m;
}

namespace {

Grid log_grid_for(const OperatorSpec& op, const SymbolSettings& st) {
    if (st.use_native_log_grid && op.kernel.log_table && !op.kernel.log_table->q.empty())
        return op.kernel.log_table->q.begin()->second.grid;
    if (op.family->n == 1)
        return Grid::line(-st.t_half_width, st.t_half_width, st.t_count);
    const Axis ax(-st.t2_half_width, st.t2_half_width, st.t2_count);
    return Grid::plane(ax, ax);
}

SampledFunction zero_on(const Grid& g) { return SampledFunction(g); }

}  // namespace

SampledFunction scalar_symbol(const OperatorSpec& op, const Grid& s_grid, SymbolMethod method,
                              const SymbolSettings& settings, Diagnostics* diag) {
    if (!op.family->positive_definite)
        throw NumericError(
            "scalar_symbol: family is not positive definite; use matrix_symbol instead");
    if (s_grid.n != op.family->n) throw UsageError("scalar_symbol: s-grid dimension mismatch");

    if (method == SymbolMethod::LogFourier) {
        const Grid t_grid = log_grid_for(op, settings);
        const SampledFunction L = to_log_coordinates(op.kernel, *op.family, 1, 1, t_grid, diag);
        return fourier_forward(L, s_grid, diag);
    }

    // Direct route: midpoint quadrature in log u, fresh exponential per node.
    QuadratureSettings q;
    q.log_half_width = settings.t_half_width;
    q.log_step = settings.direct_step;
    const UQuadrature quad = UQuadrature::build(op.kernel.support, *op.family, q);
    const int n = op.family->n;
    std::vector<double> w;       // K(u) * prod a_k^{-1/2} * weight
    std::vector<double> loga;    // n per retained node
    double ev[2];
    for (std::size_t qi = 0; qi < quad.size(); ++qi) {
        const double* u = quad.nodes.data() + qi * static_cast<std::size_t>(n);
        const std::span<const double> us(u, static_cast<std::size_t>(n));
        const double kv = op.kernel.eval(us);
        if (kv == 0.0) continue;
        op.family->eigenvalues(us, ev);
        double weight = quad.weights[qi] * kv;
        for (int k = 0; k < n; ++k) {
            if (!(ev[k] > 0.0))
                throw NumericError("scalar_symbol: non-positive eigenvalue on the support");
            weight /= std::sqrt(ev[k]);
        }
        if (!std::isfinite(weight)) throw NumericError("scalar_symbol: integrand evaluation failed");
        w.push_back(weight);
        for (int k = 0; k < n; ++k) loga.push_back(std::log(ev[k]));
    }

    SampledFunction out(s_grid);
    const std::size_t ns0 = s_grid.axes[0].count;
    const std::int64_t total = static_cast<std::int64_t>(s_grid.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t si = 0; si < total; ++si) {
        double s[2];
        s[0] = s_grid.axes[0].coord(static_cast<std::size_t>(si) % ns0);
        if (n == 2) s[1] = s_grid.axes[1].coord(static_cast<std::size_t>(si) / ns0);
        Complex acc(0.0);
        for (std::size_t qi = 0; qi < w.size(); ++qi) {
            double phase = -s[0] * loga[qi * static_cast<std::size_t>(n)];
            if (n == 2) phase -= s[1] * loga[qi * 2 + 1];
            acc += w[qi] * Complex(std::cos(phase), std::sin(phase));
        }
        out.values[si] = acc;
    }
    return out;
}

namespace {

// Kernel mass on the region of pair (i,j), used to reject missing inverse
// maps only when they would actually matter.
double region_mass(const OperatorSpec& op, int i, int j) {
    const UQuadrature quad = UQuadrature::build(op.kernel.support, *op.family, op.quad);
    const int n = op.family->n;
    double inside = 0.0, total = 0.0;
    for (std::size_t qi = 0; qi < quad.size(); ++qi) {
        const double* u = quad.nodes.data() + qi * static_cast<std::size_t>(n);
        const std::span<const double> us(u, static_cast<std::size_t>(n));
        const double m = std::abs(quad.weights[qi] * op.kernel.eval(us));
        if (m == 0.0) continue;
        total += m;
        double ev[2];
        op.family->eigenvalues(us, ev);
        bool singular = false;
        for (int k = 0; k < n; ++k) singular = singular || ev[k] == 0.0;
        if (!singular && omega_membership(us, i, j, *op.family)) inside += m;
    }
    return total > 0.0 ? inside / total : 0.0;
}

}  // namespace

SymbolMatrix matrix_symbol(const OperatorSpec& op, const Grid& s_grid,
                           const SymbolSettings& settings, Diagnostics* diag) {
    const int n = op.family->n;
    if (s_grid.n != n) throw UsageError("matrix_symbol: s-grid dimension mismatch");
    SymbolMatrix m;
    m.n = n;
    m.size = octant_count(n);
    m.s_grid = s_grid;
    m.entries.assign(static_cast<std::size_t>(m.size * m.size), SampledFunction());
    const Grid t_grid = log_grid_for(op, settings);
    for (int i = 1; i <= m.size; ++i) {
        for (int j = i; j <= m.size; ++j) {
            SampledFunction entry;
            if (op.family->maps_for(i, j)) {
                const SampledFunction L = to_log_coordinates(op.kernel, *op.family, i, j, t_grid, diag);
                entry = max_abs(L) == 0.0 ? zero_on(s_grid) : fourier_forward(L, s_grid, diag);
            } else if (region_mass(op, i, j) > 1e-12) {
                throw NumericError("matrix_symbol: pair (" + std::to_string(i) + "," +
                                   std::to_string(j) +
                                   ") carries kernel mass but has no inverse map");
            } else {
                entry = zero_on(s_grid);
            }
            m.at(i, j) = entry;
            m.at(j, i) = std::move(entry);
        }
    }
    return m;
}

SymbolMatrix matrix_symbol_direct(const OperatorSpec& op, const Grid& s_grid,
                                  const SymbolSettings& settings, Diagnostics* diag) {
    (void)settings;
    (void)diag;
    const int n = op.family->n;
    if (s_grid.n != n) throw UsageError("matrix_symbol: s-grid dimension mismatch");
    SymbolMatrix m;
    m.n = n;
    m.size = octant_count(n);
    m.s_grid = s_grid;
    m.entries.assign(static_cast<std::size_t>(m.size * m.size), SampledFunction());

    const UQuadrature quad = UQuadrature::build(op.kernel.support, *op.family, op.quad);
    for (int i = 1; i <= m.size; ++i) {
        for (int j = i; j <= m.size; ++j) {
            const SignVec eps = octant_signature(i, j, n);
            // retained nodes on the region, with |a|^(-1/2) folded in
            std::vector<double> w, loga;
            double ev[2];
            for (std::size_t qi = 0; qi < quad.size(); ++qi) {
                const double* u = quad.nodes.data() + qi * static_cast<std::size_t>(n);
                const std::span<const double> us(u, static_cast<std::size_t>(n));
                const double kv = op.kernel.eval(us);
                if (kv == 0.0) continue;
                op.family->eigenvalues(us, ev);
                bool in_region = true;
                for (int k = 0; k < n; ++k)
                    in_region = in_region && ev[k] != 0.0 && (ev[k] > 0 ? 1 : -1) == eps[k];
                if (!in_region) continue;
                double weight = quad.weights[qi] * kv;
                for (int k = 0; k < n; ++k) weight /= std::sqrt(std::abs(ev[k]));
                w.push_back(weight);
                for (int k = 0; k < n; ++k) loga.push_back(std::log(std::abs(ev[k])));
            }
            SampledFunction entry(s_grid);
            const std::size_t ns0 = s_grid.axes[0].count;
            const std::int64_t total = static_cast<std::int64_t>(s_grid.size());
#pragma omp parallel for schedule(static)
            for (std::int64_t si = 0; si < total; ++si) {
                double s[2];
                s[0] = s_grid.axes[0].coord(static_cast<std::size_t>(si) % ns0);
                if (n == 2) s[1] = s_grid.axes[1].coord(static_cast<std::size_t>(si) / ns0);
                Complex acc(0.0);
                for (std::size_t qi = 0; qi < w.size(); ++qi) {
                    double phase = -s[0] * loga[qi * static_cast<std::size_t>(n)];
                    if (n == 2) phase -= s[1] * loga[qi * 2 + 1];
                    acc += w[qi] * Complex(std::cos(phase), std::sin(phase));
                }
                entry.values[si] = acc;
            }
            m.at(i, j) = entry;
            m.at(j, i) = std::move(entry);
        }
    }
    return m;
}

namespace {

// Largest eigenvalue of an m x m Hermitian positive semidefinite matrix by
// cyclic Jacobi rotations; m <= 4.
double largest_eig_hermitian(std::array<std::array<Complex, 4>, 4>& g, int m) {
    double scale = 0.0;
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) scale = std::max(scale, std::abs(g[r][c]));
    if (scale == 0.0) return 0.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) off = std::max(off, std::abs(g[p][q]));
        if (off <= 1e-12 * scale) break;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const Complex gpq = g[p][q];
                const double agpq = std::abs(gpq);
                if (agpq <= 1e-15 * scale) continue;
                const Complex phase = gpq / agpq;
                const double tau = (g[q][q].real() - g[p][p].real()) / (2.0 * agpq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // G <- R^H G R, R = I except R[p][p]=c, R[p][q]=s*phase,
                // R[q][p]=-s*conj(phase), R[q][q]=c
                for (int k = 0; k < m; ++k) {
                    const Complex gkp = g[k][p], gkq = g[k][q];
                    g[k][p] = c * gkp - s * std::conj(phase) * gkq;
                    g[k][q] = s * phase * gkp + c * gkq;
                }
                for (int k = 0; k < m; ++k) {
                    const Complex gpk = g[p][k], gqk = g[q][k];
                    g[p][k] = c * gpk - s * phase * gqk;
                    g[q][k] = s * std::conj(phase) * gpk + c * gqk;
                }
                g[p][q] = Complex(0.0);
                g[q][p] = Complex(0.0);
            }
        }
    }
    double lam = 0.0;
    for (int k = 0; k < m; ++k) lam = std::max(lam, g[k][k].real());
    return lam;
}

}  // namespace

double symbol_norm(const SymbolMatrix& phi) {
    if (phi.entries.empty()) throw UsageError("symbol_norm: empty symbol");
    const std::size_t npts = phi.entries.front().values.size();
    for (const auto& e : phi.entries)
        if (e.values.size() != npts) throw UsageError("symbol_norm: inconsistent entries");
    const int m = phi.size;
    double best = 0.0;
    const std::int64_t total = static_cast<std::int64_t>(npts);
#pragma omp parallel for schedule(static) reduction(max : best)
    for (std::int64_t k = 0; k < total; ++k) {
        std::array<std::array<Complex, 4>, 4> mat{};
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                mat[r][c] = phi.entries[static_cast<std::size_t>(r * m + c)].values[k];
        // Gram matrix M^H M
        std::array<std::array<Complex, 4>, 4> gram{};
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                Complex acc(0.0);
                for (int l = 0; l < m; ++l) acc += std::conj(mat[l][r]) * mat[l][c];
                gram[r][c] = acc;
            }
        const double lam = largest_eig_hermitian(gram, m);
        best = std::max(best, std::sqrt(std::max(lam, 0.0)));
    }
    return best;
}

SpectrumEstimate spectrum_estimate(const SampledFunction& phi) {
    if (phi.values.empty()) throw UsageError("spectrum_estimate: empty symbol");
    SpectrumEstimate est;
    est.points = phi.values;
    const double m = max_abs(phi);
    double boundary = 0.0;
    const Grid& g = phi.grid;
    if (g.n == 1) {
        boundary = std::max(std::abs(phi.values.front()), std::abs(phi.values.back()));
    } else {
        for (std::size_t i = 0; i < g.axes[0].count; ++i)
            boundary = std::max({boundary, std::abs(phi.at(i, 0)),
                                 std::abs(phi.at(i, g.axes[1].count - 1))});
        for (std::size_t j = 0; j < g.axes[1].count; ++j)
            boundary = std::max({boundary, std::abs(phi.at(0, j)),
                                 std::abs(phi.at(g.axes[0].count - 1, j))});
    }
    if (m > 0.0 && boundary > 1e-3 * m)
        est.warnings.push_back(
            "spectrum_estimate: symbol has not decayed at the s-grid boundary");
    double max_im = 0.0, min_re = 0.0, max_re = 0.0;
    for (const Complex& v : phi.values) {
        max_im = std::max(max_im, std::abs(v.imag()));
        min_re = std::min(min_re, v.real());
        max_re = std::max(max_re, v.real());
    }
    if (max_im <= 1e-10 * std::max(m, 1e-300) && min_re >= -1e-10 * std::max(m, 1e-300)) {
        est.real_nonnegative = true;
        est.hull_min = 0.0;  // the symbol vanishes at infinity, so 0 is in the closure
        est.hull_max = max_re;
    }
    return est;
}

}  // namespace hausdorff
