#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "hausdorff/expression.hpp"
#include "hausdorff/grid.hpp"

namespace hausdorff {

/// Eigenvalue sign pattern; entries beyond the dimension stay +1.
using SignVec = std::array<int, 2>;

int octant_count(int n);
/// Sign vector of octant i (1-based). Encoding: bit k of i-1 set <=> axis k
/// negative, so octant 1 is the all-positive one.
SignVec octant_signs(int i, int n);
int octant_from_signs(const SignVec& s, int n);
/// The unique sign vector epsilon(i,j) mapping octant i onto octant j.
SignVec octant_signature(int i, int j, int n);

/// Where a kernel may be nonzero; drives quadrature domains.
struct Support {
    enum class Kind { Full, PositiveOctant, Box } kind = Kind::Full;
    std::array<std::pair<double, double>, 2> box{};  // per-axis interval for Kind::Box

    static Support full() { return {}; }
    static Support positive() { return {Kind::PositiveOctant, {}}; }
    static Support box1(double lo, double hi) {
        Support s;
        s.kind = Kind::Box;
        s.box[0] = {lo, hi};
        return s;
    }
};

/// Commuting self-adjoint matrix family A(u), given through its eigenvalue
/// maps a_k(u), an optional orthogonal conjugator, and the per-octant-pair
/// inverse maps b_ij(t) of |a_k(u)| = exp(t_k) with their Jacobians.
struct MatrixFamily {
    struct PairMaps {
        std::vector<expr::ExprPtr> b;  // n components, functions of t
        expr::ExprPtr jacobian;        // signed; |J| is what enters the formulas
    };

    std::string name;
    int n = 1;
    std::vector<expr::ExprPtr> a;
    bool positive_definite = false;
    std::optional<std::array<std::array<double, 2>, 2>> conjugator;
    std::map<std::pair<int, int>, PairMaps> pair_maps;

    void eigenvalues(std::span<const double> u, double* out) const;
    /// A(u) x, using the conjugator when present.
    void apply_matrix(std::span<const double> u, std::span<const double> x, double* out) const;
    const PairMaps* maps_for(int i, int j) const;
    /// Maps of the canonical pair (1, j) whose signature equals `s`.
    const PairMaps* maps_for_signs(const SignVec& s) const;
    /// Sampled invariants: conjugator orthogonality, |a(b(t))| = exp(t),
    /// b(t) lands in the right region, positivity under the flag.
    void validate() const;
};

bool omega_membership(std::span<const double> u, int i, int j, const MatrixFamily& family);

/// Region-wise log-coordinate kernel data: one sampled Q per eigenvalue sign
/// class, interpreted through K(b(t)) = exp(sum t/2) Q(t) / |J(t)|.
struct LogTable {
    std::shared_ptr<const MatrixFamily> family;
    std::map<SignVec, SampledFunction> q;
    double exclude_window = 0.0;  // |t| window regularised when tabulating
};

/// A kernel on R^n: expression, tabulated samples, a closed form, or
/// log-coordinate data. Exactly one source is set.
struct KernelSpec {
    int n = 1;
    Support support;
    expr::ExprPtr expression;
    std::shared_ptr<const SampledFunction> table;
    std::function<double(std::span<const double>)> closed_form;
    std::shared_ptr<const LogTable> log_table;

    static KernelSpec from_expression(const std::string& text, int n, Support s);
    static KernelSpec from_table(SampledFunction samples, Support s);
    static KernelSpec from_closed_form(std::function<double(std::span<const double>)> f, int n,
                                       Support s);
    static KernelSpec from_log_table(LogTable t, Support s);

    double eval(std::span<const double> u, Diagnostics* diag = nullptr) const;
    bool in_support(std::span<const double> u) const;
};

/// Samples K(b_ij(t)) exp(-sum t/2) |J_ij(t)| on t_grid; the log-coordinate
/// kernel whose Fourier transform is the (i,j) symbol entry. For positive
/// definite families the pair is forced to the all-positive one.
SampledFunction to_log_coordinates(const KernelSpec& kernel, const MatrixFamily& family, int i,
                                   int j, const Grid& t_grid, Diagnostics* diag = nullptr);

/// Inverse of to_log_coordinates for positive definite families: wraps Q as a
/// kernel through K(b(t)) = exp(sum t/2) Q(t) / |J(t)|.
KernelSpec from_log_coordinates(SampledFunction q, std::shared_ptr<const MatrixFamily> family);

/// Evaluates the kernel on a grid of u points. Errors when a log-table kernel
/// does not cover the requested range.
SampledFunction tabulate(const KernelSpec& kernel, const Grid& u_grid, Diagnostics* diag = nullptr);

struct AdmissibilityOptions {
    double core_half_width = 12.0;  // initial window in log coordinates
    double block = 4.0;             // expansion block width
    double max_half_width = 120.0;
    double step_1d = 5e-4;
    double step_2d = 0.1;
    double tail_tolerance = 1e-3;
};

struct AdmissibilityReport {
    bool admissible = false;
    double bound = 0.0;
    double tail_ratio = 0.0;
    double refinement_delta = 0.0;
};

/// Estimates integral |det A(u)|^(-1/2) |K(u)| du by expanding-window
/// midpoint quadrature in log coordinates with geometric tail extrapolation;
/// divergence is detected from growing window increments.
AdmissibilityReport admissibility_check(const KernelSpec& kernel, const MatrixFamily& family,
                                        const AdmissibilityOptions& opts = {},
                                        Diagnostics* diag = nullptr);

/// A shipped kernel/family combination.
struct Preset {
    std::string name;
    KernelSpec kernel;
    std::shared_ptr<const MatrixFamily> family;
};

/// Presets: cesaro, boyd (needs alpha < 1/2), calderon, dilation-diag-2d,
/// negbox. Throws UsageError("unknown preset: <name>") otherwise.
Preset make_preset(const std::string& name, double alpha = 0.0);

/// Loads {n, kernel:{...}, family:{...}} definitions (see README for the
/// schema); the family may name a preset family or spell out maps.
Preset load_definition_file(const std::string& path);
Preset load_definition_json(const std::string& json_text);

}  // namespace hausdorff
