#pragma once

#include "hyperconvex/report.hpp"
#include "hyperconvex/types.hpp"

#include <cstdint>
#include <vector>

namespace hyperconvex {

/// Finite list of points a_0, ..., a_k sharing one ambient dimension.
class PointFamily {
 public:
  explicit PointFamily(std::vector<Vector> points);
  explicit PointFamily(Matrix points);

  Eigen::Index ambient_dim() const { return points_.rows(); }
  /// Number of points minus one.
  Eigen::Index k() const { return points_.cols() - 1; }
  Eigen::Index size() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  Vector point(Eigen::Index i) const { return points_.col(i); }

  /// Columns a_i - a_0 for i = 1..k.
  Matrix differences() const;

 private:
  Matrix points_;
};

/// sigma_min(D) > tol * max(sigma_max(D), 1) for D = [a_i - a_0].
bool is_affinely_independent(const PointFamily& fam, double tol);

/// sigma_min(D) / (4 sqrt(k)): every selection u_i with |u_i - a_i| < delta
/// is affinely independent. Infinite for a single point. Throws
/// PreconditionError for a dependent family.
double independence_radius(const PointFamily& fam, const Tolerances& tol = {});

/// Searches for affinely dependent selections u_i in the balls B(a_i, delta):
/// uniform samples, boundary-biased samples and collapse attempts toward the
/// best-fitting lower-dimensional flat. A selection counts as dependent when
/// its difference matrix has sigma_min <= tol.rank * max(1, sigma_max).
Report adversarial_independence_check(const PointFamily& fam, double delta, int trials, std::uint64_t seed,
                                      const Tolerances& tol = {});

/// Barycentric coordinates of x with respect to an affinely independent
/// family, by least squares on the difference matrix.
Vector barycentric_coordinates(const PointFamily& simplex, const Vector& x);

/// True iff every barycentric coordinate of x lies in (tol, 1 - tol).
/// Throws PreconditionError if x is off the affine hull by more than tol.
bool in_relative_interior(const PointFamily& simplex, const Vector& x, double tol);

}  // namespace hyperconvex
