#pragma once

#include "hausdorff/model.hpp"

namespace hausdorff {

/// u-integration controls. Positive definite families integrate in log
/// coordinates over the positive orthant (midpoint rule, step log_step,
/// |log u_k| <= log_half_width); other families integrate on a uniform
/// midpoint grid over the support box intersected with the cube of
/// half-width uniform_half_width.
struct QuadratureSettings {
    double log_half_width = 30.0;
    double log_step = 0.01;
    double uniform_half_width = 4.5;
    double uniform_step = 0.01;
};

/// Quadrature nodes in u with weights for the du measure.
struct UQuadrature {
    int n = 1;
    std::vector<double> nodes;    // n coordinates per node
    std::vector<double> weights;  // one per node

    std::size_t size() const { return weights.size(); }
    static UQuadrature build(const Support& support, const MatrixFamily& family,
                             const QuadratureSettings& quad);
};

struct OperatorSpec {
    KernelSpec kernel;
    std::shared_ptr<const MatrixFamily> family;
    QuadratureSettings quad;
    double admissibility_bound = 0.0;
    double admissibility_tail = 0.0;  // tail ratio of the bound integral
};

/// Builds the operator and verifies admissibility once; throws NumericError
/// when the bound integral diverges.
OperatorSpec make_operator(KernelSpec kernel, std::shared_ptr<const MatrixFamily> family,
                           QuadratureSettings quad = {},
                           const AdmissibilityOptions& adm = {});
OperatorSpec make_operator(const Preset& preset, QuadratureSettings quad = {},
                           const AdmissibilityOptions& adm = {});

/// (H f)(x) = integral K(u) f(A(u) x) du for every x in x_grid, interpolating
/// f off-grid with extension by zero. The fraction of integrand mass that
/// falls outside f's grid (estimated with the nearest in-hull value of f) is
/// reported in diag and raises NumericError above 10%.
SampledFunction apply(const OperatorSpec& op, const SampledFunction& f, const Grid& x_grid,
                      Diagnostics* diag = nullptr);

/// l-fold composition; every iterate is re-sampled on x_grid.
SampledFunction apply_iterated(const OperatorSpec& op, int l, const SampledFunction& f,
                               const Grid& x_grid, Diagnostics* diag = nullptr);

namespace ref {
/// Plain serial application, independent of the OpenMP sweep.
SampledFunction apply(const OperatorSpec& op, const SampledFunction& f, const Grid& x_grid,
                      Diagnostics* diag = nullptr);
}  // namespace ref

}  // namespace hausdorff
