#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hausdorff/common.hpp"

namespace hausdorff::expr {

enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Call, Chi };

struct Node;
using ExprPtr = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    double value = 0.0;       // Constant
    std::string name;         // Variable spelling or function name
    char var_base = 'u';      // Variable: 'u' or 't'
    int var_index = 0;        // Variable: 0-based component
    std::vector<ExprPtr> args;
};

/// Values bound to the variables; either pointer may be null when that
/// family of variables does not occur.
struct Env {
    const double* u = nullptr;
    const double* t = nullptr;
    int n = 1;
};

/// Parses the kernel/map grammar: real literals, variables u1..un (alias u
/// for n = 1) and t1..tn (alias t), + - * / ^, unary -, exp, log, abs, sqrt,
/// max, min, and interval indicators chi(a,b)(x). Throws UsageError with the
/// offending offset on syntax errors or unknown identifiers.
ExprPtr parse(const std::string& text, int n);

/// Evaluates the tree. chi(a,b)(x) is 1 inside (a,b), 1/2 when x equals an
/// endpoint (the Fourier-inversion midpoint convention, so that indicator
/// kernels sampled exactly on a jump keep second-order quadrature), 0 outside.
double eval(const Node& node, const Env& env);

/// Deterministic printable form; parse(print(e), n) reproduces the tree.
std::string print(const Node& node);

}  // namespace hausdorff::expr
