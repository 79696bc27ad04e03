#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>

#include "hausdorff/common.hpp"

namespace hausdorff {

/// One sampling axis. Points are uniform in the coordinate itself, or uniform
/// in log u for half-line axes on (0, inf).
struct Axis {
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 2;
    bool half_line = false;

    Axis() = default;
    Axis(double min_, double max_, std::size_t count_, bool half_line_ = false);

    /// Step in the sampling parameter (the coordinate, or log of it).
    double param_step() const;
    double param_min() const;
    double coord(std::size_t i) const;
    /// Quadrature weight of node i for integration in the coordinate
    /// (trapezoidal in the parameter, with the measure factor for log axes).
    double weight(std::size_t i) const;

    bool operator==(const Axis&) const = default;
};

struct Grid {
    int n = 1;
    std::array<Axis, 2> axes{};

    static Grid line(double min, double max, std::size_t count, bool half_line = false);
    static Grid plane(const Axis& a0, const Axis& a1);

    std::size_t size() const { return n == 1 ? axes[0].count : axes[0].count * axes[1].count; }
    std::size_t index(std::size_t i0, std::size_t i1 = 0) const { return i0 + axes[0].count * i1; }

    bool operator==(const Grid&) const = default;
};

/// Complex samples over a grid; axis 0 varies fastest in `values`.
struct SampledFunction {
    Grid grid;
    std::vector<Complex> values;

    SampledFunction() = default;
    explicit SampledFunction(Grid g) : grid(std::move(g)), values(grid.size(), Complex(0.0)) {}

    Complex& at(std::size_t i0, std::size_t i1 = 0) { return values[grid.index(i0, i1)]; }
    Complex at(std::size_t i0, std::size_t i1 = 0) const { return values[grid.index(i0, i1)]; }

    static SampledFunction sample(const Grid& g,
                                  const std::function<Complex(std::span<const double>)>& f);
    /// True if every imaginary part is exactly zero.
    bool is_real() const;
};

/// Multilinear interpolation inside the grid hull (linear in the sampling
/// parameter on log axes); 0 outside, counted in `diag` when given.
Complex interpolate(const SampledFunction& f, std::span<const double> x,
                    Diagnostics* diag = nullptr);

/// Trapezoidal L2 norm over the grid's coordinate measure.
double norm_l2(const SampledFunction& f);
/// Pointwise max modulus of the difference; grids must be identical.
double distance_linf(const SampledFunction& f, const SampledFunction& g);

/// ||f - g||_2 / ||g||_2 and max|f-g| / max|g| helpers used by the suites.
double rel_l2(const SampledFunction& f, const SampledFunction& g);
double rel_linf(const SampledFunction& f, const SampledFunction& g);

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(Complex c, const SampledFunction& a);
SampledFunction pointwise_product(const SampledFunction& a, const SampledFunction& b);

double max_abs(const SampledFunction& f);

}  // namespace hausdorff
