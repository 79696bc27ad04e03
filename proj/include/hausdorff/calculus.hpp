#pragma once

#include "hausdorff/specfun.hpp"
#include "hausdorff/symbol.hpp"

namespace hausdorff {

/// Function applied to an operator through its symbol. F(0) = 0 always.
struct HoloFunctionSpec {
    enum class Kind { Polynomial, Expm1, Power, Table };
    Kind kind = Kind::Polynomial;
    std::vector<double> coefficients;  // c1, c2, ...: F(z) = sum c_k z^k
    double alpha = 1.0;                // Kind::Power: principal z^alpha, Re z > 0
    std::vector<double> table_x, table_f;  // Kind::Table: piecewise-linear on real z

    static HoloFunctionSpec polynomial(std::vector<double> c1_up);
    static HoloFunctionSpec expm1();
    static HoloFunctionSpec power(double alpha);
    static HoloFunctionSpec table(std::vector<double> x, std::vector<double> f);

    Complex eval(Complex z) const;
    /// F'(0) when finite, the coefficient split off before the inverse
    /// transform; 0 otherwise (power with alpha < 1), 1 for alpha == 1.
    double linear_coefficient() const;
};

struct CalculusSettings {
    // log-convolution grid of product_kernel
    double conv_half_width = 90.0;
    double conv_step = 0.005;
    double conv2_half_width = 40.0;
    double conv2_step = 0.5;
    // symbol pipeline of holomorphic_kernel / fractional_kernel
    double s_half_width = 150.0;
    double s_step = 0.02;
    double q_half_width = 40.0;
    double q_step = 0.005;
    SymbolSettings symbol;  // symbol evaluation inside the pipelines
    double decay_threshold = 0.02;  // max |F(phi)| at the s boundary, relative
};

/// Kernel of the operator product: per-pair log-coordinate kernels convolved
/// and block-summed over the intermediate octant, then carried back from log
/// coordinates region-wise.
KernelSpec product_kernel(const KernelSpec& k, const KernelSpec& l,
                          const std::shared_ptr<const MatrixFamily>& family,
                          const CalculusSettings& settings = {}, Diagnostics* diag = nullptr);

/// Kernel of F(H): symbol, F pointwise, inverse Fourier transform, back from
/// log coordinates. The linear part F'(0) phi is inverted exactly (its
/// inverse transform is the log-kernel itself), which removes the slowest
/// tail from the numerical step.
KernelSpec holomorphic_kernel(const OperatorSpec& op, const HoloFunctionSpec& f,
                              const CalculusSettings& settings = {}, Diagnostics* diag = nullptr);

/// Kernel of H^alpha for real alpha > 0 and a real nonnegative scalar symbol.
KernelSpec fractional_kernel(const OperatorSpec& op, double alpha,
                             const CalculusSettings& settings = {}, Diagnostics* diag = nullptr);

/// Closed forms of the weighted averaging operator x^(a-1) int_0^x t^-a f:
/// l-th power kernel (log 1/u)^(l-1) u^-alpha / (l-1)! on (0,1) and the base
/// symbol 1/((1/2 - alpha) - i s). Requires alpha < 1/2.
KernelSpec boyd_power_kernel(double alpha, int l);
Complex boyd_symbol(double alpha, double s);
/// Log-coordinate kernel of the l-th power: |t|^(l-1) exp((1/2-alpha) t) /
/// (l-1)! on t < 0.
double boyd_q(double alpha, int l, double t);

/// Closed-form fractional kernel of the Calderon operator,
/// K_alpha(u) = u^(-3/2) Q_alpha(log u) with
/// Q_alpha(t) = |t|^(alpha-1/2) K_{alpha-1/2}(|t|/2) / (sqrt(pi) Gamma(alpha)).
/// At t = 0 the alpha > 1/2 limit is returned; alpha <= 1/2 is singular there.
double calderon_fractional_kernel(double alpha, double u, const SpecFunConfig& cfg = {});
double calderon_q(double alpha, double t, const SpecFunConfig& cfg = {});

/// Scalar resolvent-power identity behind the fractional calculus:
/// Gamma(m) / (Gamma(alpha) Gamma(m-alpha)) int_0^inf t^(alpha-1)
/// (x/(t+x))^m dt, equal to x^alpha. Quadrature in log t.
double balakrishnan_power(double x, double alpha, int m);

}  // namespace hausdorff
