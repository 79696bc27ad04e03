#pragma once

#include <string>
#include <vector>

#include "hausdorff/grid.hpp"

namespace hausdorff::io {

/// Formats with 12 digits after the decimal exponent marker (>= 12
/// significant digits), the fixed width used by every CSV writer here.
std::string format_double(double v);

/// CSV with header coord1[,coord2],re,im (names overridable), UTF-8, LF line
/// endings. Deterministic: identical input produces identical bytes.
void write_csv(const SampledFunction& f, const std::string& path,
               const std::vector<std::string>& coord_names = {});

/// Reads the format written by write_csv. The coordinates must form a full
/// rectangular grid, uniform either in the coordinate or in its logarithm
/// (half-line axes).
SampledFunction read_csv(const std::string& path);

}  // namespace hausdorff::io
