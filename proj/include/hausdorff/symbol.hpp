#pragma once

#include "hausdorff/operator.hpp"

namespace hausdorff {

/// The 2^n x 2^n matrix symbol (size 1 in scalar mode), entries sampled over
/// a shared s-grid. Entries are stored symmetrically: at(i,j) and at(j,i) are
/// the same data.
struct SymbolMatrix {
    int n = 1;
    int size = 2;
    Grid s_grid;
    std::vector<SampledFunction> entries;  // row-major, size*size

    const SampledFunction& at(int i, int j) const;  // 1-based
    SampledFunction& at(int i, int j);
    static SymbolMatrix scalar(SampledFunction phi);
};

enum class SymbolMethod { LogFourier, Direct };

struct SymbolSettings {
    double t_half_width = 60.0;
    std::size_t t_count = 60001;  // log-route grid, n = 1
    double t2_half_width = 40.0;
    std::size_t t2_count = 161;  // per axis, n = 2
    double direct_step = 2e-3;   // midpoint step of the direct route
    bool use_native_log_grid = true;
};

/// Scalar symbol of a positive definite family operator. LogFourier samples
/// the log-coordinate kernel and takes its Fourier transform; Direct applies
/// midpoint quadrature to the defining integral
/// integral K(u) a(u)^(-1/2 - i s) du. Both are exposed so they can
/// cross-validate each other.
SampledFunction scalar_symbol(const OperatorSpec& op, const Grid& s_grid,
                              SymbolMethod method = SymbolMethod::LogFourier,
                              const SymbolSettings& settings = {}, Diagnostics* diag = nullptr);

/// Matrix symbol: entry (i,j) is the integral over the region where the
/// eigenvalue sign pattern equals epsilon(i,j), computed through the
/// per-pair log-coordinate route. Pairs without registered inverse maps must
/// carry no kernel mass.
SymbolMatrix matrix_symbol(const OperatorSpec& op, const Grid& s_grid,
                           const SymbolSettings& settings = {}, Diagnostics* diag = nullptr);

/// Membership-restricted midpoint quadrature of the same entries; the slower
/// cross-check route.
SymbolMatrix matrix_symbol_direct(const OperatorSpec& op, const Grid& s_grid,
                                  const SymbolSettings& settings = {}, Diagnostics* diag = nullptr);

/// sup over the s-grid of the largest singular value of Phi(s) (cyclic
/// Jacobi on the Hermitian Gram matrix; sizes here are at most 4).
double symbol_norm(const SymbolMatrix& phi);

struct SpectrumEstimate {
    std::vector<Complex> points;  // sampled range of the symbol
    bool real_nonnegative = false;
    double hull_min = 0.0;  // 0 when real_nonnegative: the symbol vanishes at infinity
    double hull_max = 0.0;
    std::vector<std::string> warnings;
};

/// Sampled range of a scalar symbol plus, for real nonnegative symbols, the
/// interval hull [0, max]. Attaches a warning when the symbol has not
/// decayed at the grid boundary.
SpectrumEstimate spectrum_estimate(const SampledFunction& phi);

}  // namespace hausdorff
