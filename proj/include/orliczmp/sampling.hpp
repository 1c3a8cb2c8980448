#pragma once

#include "orliczmp/common.hpp"

#include <cstdint>
#include <vector>

namespace orliczmp {

/// Directions on the unit sphere times log-spaced radii.
///
/// Every "global" verdict in the library means "holds down to the smallest
/// sampled radius"; the plan is the single source of that resolution.
struct SamplingPlan {
  int directions = 64;
  int radii = 60;
  double r_min = 1e-4;
  double r_max = 1e4;
  int shells = 5;  // outermost/innermost shells used for limit estimates
  std::uint64_t seed = 0;

  /// N = 1 gives {+1, -1}; N = 2 equally spaced angles; N = 3 a Fibonacci
  /// lattice; N = 4 a Halton sequence pushed through the normal quantile;
  /// higher N falls back to seeded Gaussian directions.
  std::vector<Vec> sphere_directions(int dim) const;
  std::vector<double> radius_grid() const;
  void validate() const;
};

std::vector<double> log_space(double lo, double hi, int n);

}  // namespace orliczmp
