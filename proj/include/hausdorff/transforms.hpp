#pragma once

#include "hausdorff/grid.hpp"

namespace hausdorff {

/// ghat(s) = integral g(t) exp(-i s.t) dt, trapezoidal on the (uniform) t-grid,
/// evaluated at every node of s_grid. Warns when g has not decayed at the
/// boundary. OpenMP-parallel over output nodes.
SampledFunction fourier_forward(const SampledFunction& g, const Grid& s_grid,
                                Diagnostics* diag = nullptr);

/// g(t) = (2 pi)^-n integral ghat(s) exp(+i s.t) ds, trapezoidal.
SampledFunction fourier_inverse(const SampledFunction& ghat, const Grid& t_grid,
                                Diagnostics* diag = nullptr);

/// Discrete convolution scaled by the grid spacing. Both inputs must share
/// per-axis spacing; the output grid is the sum-support grid, truncated to
/// [-window, window] per axis when window > 0.
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g,
                         double window = 0.0, Diagnostics* diag = nullptr);

namespace ref {

/// Plain serial counterparts, kept deliberately naive; used by the tests as
/// an independent path and by the benchmark for comparison.
SampledFunction fourier_forward(const SampledFunction& g, const Grid& s_grid);
SampledFunction fourier_inverse(const SampledFunction& ghat, const Grid& t_grid);
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g,
                         double window = 0.0);

}  // namespace ref

}  // namespace hausdorff
