#pragma once

#include "hyperconvex/types.hpp"

namespace hyperconvex {

struct MinNormOptions {
  /// Stop once ||y||^2 - min_i <y, q_i> falls to this value.
  double gap_tolerance = 1e-18;
  /// Counts major and minor cycles together.
  int max_iterations = 1000;
};

struct MinNormPoint {
  Vector point;
  /// Convex weights over every column of the input (zeros off the corral).
  Vector weights;
  /// Duality gap ||y||^2 - min_i <y, q_i> at exit.
  double gap = 0.0;
  int iterations = 0;
};

/// Minimum-norm point of conv{q_1, ..., q_m} (the columns of `points`) by
/// Wolfe's active-set scheme: major cycles add the generator most violating
/// optimality, minor cycles move towards the affine minimiser of the corral
/// and drop generators whose weight reaches zero.
///
/// Throws ConvergenceError (carrying the best iterate and its gap) when the
/// iteration cap is exceeded.
MinNormPoint min_norm_point(const Matrix& points, const MinNormOptions& options = {});

}  // namespace hyperconvex
