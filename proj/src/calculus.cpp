#include "hausdorff/calculus.hpp"

#include <cmath>

#include "hausdorff/transforms.hpp"

namespace hausdorff {

HoloFunctionSpec HoloFunctionSpec::polynomial(std::vector<double> c1_up) {
    HoloFunctionSpec f;
    f.kind = Kind::Polynomial;
    f.coefficients = std::move(c1_up);
    if (f.coefficients.empty()) throw UsageError("polynomial needs at least one coefficient");
    return f;
}

HoloFunctionSpec HoloFunctionSpec::expm1() {
    HoloFunctionSpec f;
    f.kind = Kind::Expm1;
    return f;
}

HoloFunctionSpec HoloFunctionSpec::power(double alpha) {
    if (!(alpha > 0.0)) throw UsageError("power function needs alpha > 0");
    HoloFunctionSpec f;
    f.kind = Kind::Power;
    f.alpha = alpha;
    return f;
}

HoloFunctionSpec HoloFunctionSpec::table(std::vector<double> x, std::vector<double> fx) {
    if (x.size() != fx.size() || x.size() < 2) throw UsageError("table function needs paired data");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw UsageError("table abscissae must increase");
    HoloFunctionSpec f;
    f.kind = Kind::Table;
    f.table_x = std::move(x);
    f.table_f = std::move(fx);
    return f;
}

Complex HoloFunctionSpec::eval(Complex z) const {
    switch (kind) {
        case Kind::Polynomial: {
            Complex acc(0.0);
            for (std::size_t k = coefficients.size(); k-- > 0;)
                acc = (acc + coefficients[k]) * z;
            return acc;
        }
        case Kind::Expm1: {
            if (z.imag() == 0.0) return Complex(std::expm1(z.real()));
            return std::exp(z) - 1.0;
        }
        case Kind::Power: {
            if (z == Complex(0.0)) return Complex(0.0);
            if (z.imag() == 0.0 && z.real() > 0.0) return Complex(std::pow(z.real(), alpha));
            if (z.real() <= 0.0)
                throw NumericError("power function: argument left of the imaginary axis");
            return std::exp(alpha * std::log(z));
        }
        case Kind::Table: {
            if (z.imag() != 0.0)
                throw NumericError("table function: real arguments only");
            const double x = z.real();
            if (x <= table_x.front()) return Complex(table_f.front());
            if (x >= table_x.back()) return Complex(table_f.back());
            std::size_t lo = 0, hi = table_x.size() - 1;
            while (hi - lo > 1) {
                const std::size_t mid = (lo + hi) / 2;
                (table_x[mid] <= x ? lo : hi) = mid;
            }
            const double w = (x - table_x[lo]) / (table_x[lo + 1] - table_x[lo]);
            return Complex((1.0 - w) * table_f[lo] + w * table_f[lo + 1]);
        }
    }
    throw UsageError("corrupt function spec");
}

double HoloFunctionSpec::linear_coefficient() const {
    switch (kind) {
        case Kind::Polynomial:
            return coefficients.front();
        case Kind::Expm1:
            return 1.0;
        case Kind::Power:
            return alpha == 1.0 ? 1.0 : 0.0;
        case Kind::Table:
            return 0.0;
    }
    return 0.0;
}

namespace {

void require_same_family(const KernelSpec& k, const KernelSpec& l, const MatrixFamily& family) {
    if (k.n != family.n || l.n != family.n)
        throw NumericError("product_kernel: kernel dimensions do not match the family");
    auto check = [&](const KernelSpec& kk) {
        if (kk.log_table && kk.log_table->family->name != family.name)
            throw NumericError("product_kernel: kernels belong to different families");
    };
    check(k);
    check(l);
}

Grid conv_grid(const MatrixFamily& family, const CalculusSettings& st) {
    if (family.n == 1) {
        const std::size_t count =
            2 * static_cast<std::size_t>(std::llround(st.conv_half_width / st.conv_step)) + 1;
        return Grid::line(-st.conv_half_width, st.conv_half_width, count);
    }
    const std::size_t count =
        2 * static_cast<std::size_t>(std::llround(st.conv2_half_width / st.conv2_step)) + 1;
    const Axis ax(-st.conv2_half_width, st.conv2_half_width, count);
    return Grid::plane(ax, ax);
}

Support product_support(const MatrixFamily& family) {
    return family.positive_definite ? Support::positive() : Support::full();
}

}  // namespace

KernelSpec product_kernel(const KernelSpec& k, const KernelSpec& l,
                          const std::shared_ptr<const MatrixFamily>& family,
                          const CalculusSettings& settings, Diagnostics* diag) {
    if (!family) throw UsageError("product_kernel: null family");
    require_same_family(k, l, *family);
    const Grid t_grid = conv_grid(*family, settings);
    const double window = family->n == 1 ? settings.conv_half_width : 0.0;
    LogTable out;
    out.family = family;

    if (family->positive_definite) {
        const SampledFunction lk = to_log_coordinates(k, *family, 1, 1, t_grid, diag);
        const SampledFunction ll = to_log_coordinates(l, *family, 1, 1, t_grid, diag);
        out.q.emplace(SignVec{1, 1}, convolve(lk, ll, window, diag));
        return KernelSpec::from_log_table(std::move(out), product_support(*family));
    }

    const int m = octant_count(family->n);
    // Entry (i,j) depends only on epsilon(i,j); compute one representative
    // per sign class, Q_eps = sum_k K_(1,k) * L_(k,j(eps)).
    std::vector<SampledFunction> klogs(static_cast<std::size_t>(m)),
        llogs(static_cast<std::size_t>(m * m));
    for (int kk = 1; kk <= m; ++kk)
        klogs[static_cast<std::size_t>(kk - 1)] = to_log_coordinates(k, *family, 1, kk, t_grid, diag);
    for (int kk = 1; kk <= m; ++kk)
        for (int j = 1; j <= m; ++j)
            llogs[static_cast<std::size_t>((kk - 1) * m + (j - 1))] =
                to_log_coordinates(l, *family, kk, j, t_grid, diag);
    for (int j = 1; j <= m; ++j) {
        SampledFunction q;
        for (int kk = 1; kk <= m; ++kk) {
            const SampledFunction& a = klogs[static_cast<std::size_t>(kk - 1)];
            const SampledFunction& b = llogs[static_cast<std::size_t>((kk - 1) * m + (j - 1))];
            if (max_abs(a) == 0.0 || max_abs(b) == 0.0) continue;
            SampledFunction term = convolve(a, b, window, diag);
            q = q.values.empty() ? std::move(term) : q + term;
        }
        if (!q.values.empty() && max_abs(q) > 0.0)
            out.q.emplace(octant_signature(1, j, family->n), std::move(q));
    }
    return KernelSpec::from_log_table(std::move(out), product_support(*family));
}

namespace {

Grid pipeline_s_grid(const CalculusSettings& st) {
    const std::size_t count =
        2 * static_cast<std::size_t>(std::llround(st.s_half_width / st.s_step)) + 1;
    return Grid::line(-st.s_half_width, st.s_half_width, count);
}

Grid pipeline_q_grid(const CalculusSettings& st) {
    const std::size_t count =
        2 * static_cast<std::size_t>(std::llround(st.q_half_width / st.q_step)) + 1;
    return Grid::line(-st.q_half_width, st.q_half_width, count);
}

KernelSpec resynthesize(const OperatorSpec& op, const SampledFunction& g_values,
                        const SampledFunction& phi, double linear_coeff, const Grid& q_grid,
                        double exclude_window, const CalculusSettings& settings,
                        Diagnostics* diag) {
    // decay check at the s boundary
    const double gmax = max_abs(g_values);
    const double gboundary =
        std::max(std::abs(g_values.values.front()), std::abs(g_values.values.back()));
    if (gmax > 0.0 && gboundary > settings.decay_threshold * gmax)
        throw NumericError(
            "kernel synthesis: F(symbol) has not decayed at the s-grid boundary (ratio " +
            std::to_string(gboundary / gmax) + "); widen the s-grid or reconsider F");

    SampledFunction q;
    if (linear_coeff != 0.0) {
        const SampledFunction remainder = g_values - linear_coeff * phi;
        SampledFunction l_on_q = to_log_coordinates(op.kernel, *op.family, 1, 1, q_grid, diag);
        if (max_abs(remainder) == 0.0) {
            q = linear_coeff * l_on_q;
        } else {
            q = linear_coeff * l_on_q + fourier_inverse(remainder, q_grid, diag);
        }
    } else {
        q = fourier_inverse(g_values, q_grid, diag);
    }

    // the data is a real kernel; the imaginary residual is numerical noise
    double max_im = 0.0;
    for (const Complex& v : q.values) max_im = std::max(max_im, std::abs(v.imag()));
    const double qmax = max_abs(q);
    if (qmax > 0.0 && max_im > 1e-6 * qmax && diag)
        diag->warn("kernel synthesis: imaginary residual " + std::to_string(max_im / qmax));
    for (Complex& v : q.values) v = Complex(v.real());

    KernelSpec out = from_log_coordinates(std::move(q), op.family);
    if (exclude_window > 0.0) {
        LogTable t = *out.log_table;
        t.exclude_window = exclude_window;
        out = KernelSpec::from_log_table(std::move(t), out.support);
    }
    return out;
}

}  // namespace

KernelSpec holomorphic_kernel(const OperatorSpec& op, const HoloFunctionSpec& f,
                              const CalculusSettings& settings, Diagnostics* diag) {
    if (std::abs(f.eval(Complex(0.0))) > 1e-12)
        throw NumericError("holomorphic_kernel: F(0) must vanish");
    const Grid s_grid = pipeline_s_grid(settings);
    const SampledFunction phi =
        scalar_symbol(op, s_grid, SymbolMethod::LogFourier, settings.symbol, diag);
    SampledFunction g(phi.grid);
    for (std::size_t i = 0; i < phi.values.size(); ++i) g.values[i] = f.eval(phi.values[i]);
    return resynthesize(op, g, phi, f.linear_coefficient(), pipeline_q_grid(settings), 0.0,
                        settings, diag);
}

KernelSpec fractional_kernel(const OperatorSpec& op, double alpha,
                             const CalculusSettings& settings, Diagnostics* diag) {
    if (!(alpha > 0.0)) throw UsageError("fractional_kernel: alpha must be positive");
    const Grid s_grid = pipeline_s_grid(settings);
    SampledFunction phi =
        scalar_symbol(op, s_grid, SymbolMethod::LogFourier, settings.symbol, diag);
    const double pmax = max_abs(phi);
    double max_im = 0.0, min_re = 0.0;
    for (const Complex& v : phi.values) {
        max_im = std::max(max_im, std::abs(v.imag()));
        min_re = std::min(min_re, v.real());
    }
    if (max_im > 1e-8 * pmax)
        throw NumericError("fractional_kernel: the scalar symbol is not real");
    if (min_re < -1e-10 * pmax)
        throw NumericError("fractional_kernel: the scalar symbol is significantly negative");
    for (Complex& v : phi.values) v = Complex(std::max(v.real(), 0.0));  // clip quadrature noise

    SampledFunction g(phi.grid);
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        g.values[i] = Complex(std::pow(phi.values[i].real(), alpha));
    const double linear_coeff = alpha == 1.0 ? 1.0 : 0.0;
    const double window = alpha < 0.5 + 1e-12 ? 1e-6 : 0.0;
    return resynthesize(op, g, phi, linear_coeff, pipeline_q_grid(settings), window, settings,
                        diag);
}

KernelSpec boyd_power_kernel(double alpha, int l) {
    if (!(alpha < 0.5))
        throw NumericError("boyd_power_kernel: alpha must be below 1/2 for L2 boundedness");
    if (l < 1) throw UsageError("boyd_power_kernel: l must be a positive integer");
    double fact = 1.0;
    for (int k = 2; k < l; ++k) fact *= static_cast<double>(k);
    auto fn = [alpha, l, fact](std::span<const double> u) -> double {
        const double x = u[0];
        double ind;
        if (x == 0.0 || x == 1.0)
            ind = 0.5;
        else if (x > 0.0 && x < 1.0)
            ind = 1.0;
        else
            return 0.0;
        double value = ind * std::pow(x, -alpha) / fact;
        if (l > 1) value *= std::pow(std::log(1.0 / x), l - 1);
        return value;
    };
    return KernelSpec::from_closed_form(fn, 1, Support::box1(0.0, 1.0));
}

Complex boyd_symbol(double alpha, double s) {
    if (!(alpha < 0.5)) throw NumericError("boyd_symbol: alpha must be below 1/2");
    return 1.0 / Complex(0.5 - alpha, -s);
}

double boyd_q(double alpha, int l, double t) {
    if (!(alpha < 0.5)) throw NumericError("boyd_q: alpha must be below 1/2");
    if (l < 1) throw UsageError("boyd_q: l must be a positive integer");
    if (t >= 0.0) return t == 0.0 && l == 1 ? 0.5 : 0.0;
    double fact = 1.0;
    for (int k = 2; k < l; ++k) fact *= static_cast<double>(k);
    return std::pow(-t, l - 1) * std::exp((0.5 - alpha) * t) / fact;
}

double calderon_q(double alpha, double t, const SpecFunConfig& cfg) {
    if (!(alpha > 0.0)) throw UsageError("calderon_q: alpha must be positive");
    const double at = std::abs(t);
    const double norm = 1.0 / (std::sqrt(kPi) * gamma_real(alpha));
    if (at == 0.0) {
        if (alpha <= 0.5)
            throw NumericError("calderon_q: singular at t = 0 for alpha <= 1/2");
        // small-z limit K_nu(z) ~ Gamma(nu)/2 (z/2)^-nu with nu = alpha - 1/2
        return norm * 0.5 * gamma_real(alpha - 0.5) * std::pow(4.0, alpha - 0.5);
    }
    const double nu = alpha - 0.5;
    return norm * std::pow(at, nu) * bessel_k_real(nu, 0.5 * at, cfg);
}

double calderon_fractional_kernel(double alpha, double u, const SpecFunConfig& cfg) {
    if (!(alpha > 0.0)) throw UsageError("calderon_fractional_kernel: alpha must be positive");
    if (!(u > 0.0)) throw UsageError("calderon_fractional_kernel: u must be positive");
    return std::pow(u, -1.5) * calderon_q(alpha, std::log(u), cfg);
}

double balakrishnan_power(double x, double alpha, int m) {
    if (!(x > 0.0)) throw UsageError("balakrishnan_power: x must be positive");
    if (!(alpha > 0.0) || m <= alpha)
        throw UsageError("balakrishnan_power: need 0 < alpha < m");
    const double constant =
        gamma_real(static_cast<double>(m)) / (gamma_real(alpha) * gamma_real(m - alpha));
    // t = exp(w); the integrand exp(alpha w) (x/(exp(w)+x))^m decays
    // geometrically on both sides once |w - log x| is large.
    const double w0 = std::log(x);
    const double half = 60.0;
    const std::size_t count = 24001;
    const double h = 2.0 * half / static_cast<double>(count - 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double w = w0 - half + h * static_cast<double>(k);
        const double t = std::exp(w);
        const double weight = (k == 0 || k + 1 == count) ? 0.5 : 1.0;
        acc += weight * std::exp(alpha * w) * std::pow(x / (t + x), m);
    }
    return constant * h * acc;
}

}  // namespace hausdorff
