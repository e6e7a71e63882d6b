#pragma once

#include <optional>
#include <vector>

namespace urllc {

enum class TailMethod { kExactRecursion, kSaddlepoint, kSimulation };

// CCDF values P[X > k] for k = start_index, start_index+1, ...
// Values are non-increasing and clipped to [0, 1]. Monte Carlo producers also
// fill per-point 95% confidence half-widths (or standard errors, see source).
struct TailCurve {
  int start_index = 0;
  std::vector<double> values;
  TailMethod method = TailMethod::kExactRecursion;
  std::optional<std::vector<double>> half_width;

  // P[X > k]; 1 before the grid, 0 past it.
  double at(int k) const {
    if (k < start_index) return 1.0;
    const std::size_t i = static_cast<std::size_t>(k - start_index);
    if (i >= values.size()) return 0.0;
    return values[i];
  }
};

}  // namespace urllc
