#pragma once

#include "hyperconvex/convex_set.hpp"

namespace hyperconvex {

struct Projection {
  Vector point;
  double dist = 0.0;
};

/// Nearest point of `set` to `x` together with the distance.
///
/// Flats and subspaces use the closed form pi_F(x) = pi_V(x - a) + a.
/// Polytopes run the minimum-norm-point solver on the shifted generators
/// {p_i - x}; the iteration cap is 10 * (#generators) * n and convergence is
/// declared once the duality gap drops below max(geom^2, 64 eps_mach s) with
/// s the largest squared generator norm. A capped run throws
/// ConvergenceError.
Projection metric_projection(const ConvexSet& set, const Vector& x, const Tolerances& tol = {});
Projection metric_projection(const Polytope& set, const Vector& x, const Tolerances& tol = {});
Projection metric_projection(const Flat& set, const Vector& x);
Projection metric_projection(const Subspace& set, const Vector& x);

/// p(A) = pi_A(0) and nu(A) = ||p(A)||.
struct NearestPoint {
  Vector p;
  double nu = 0.0;
};
NearestPoint nearest_point(const ConvexSet& set, const Tolerances& tol = {});

/// Projection onto set ∩ L·B with a two-sided certificate.
struct TruncatedProjection {
  Vector point;
  /// ||x - point||; an upper bound on the true distance.
  double dist = 0.0;
  /// Lower bound on the true distance from the Lagrangian dual.
  double lower = 0.0;
  /// Multiplier of the ball constraint; zero when the ball is inactive.
  double multiplier = 0.0;
};

/// Projects x onto set ∩ B(0, L) (closed ball).
///
/// With the ball multiplier mu the Lagrangian minimiser over the set is
/// pi_set(x / (1 + mu)), and ||pi_set(x / (1 + mu))|| is nonincreasing in mu,
/// so mu is located by bracketing and bisection. Every evaluated mu yields a
/// dual lower bound, reported in `lower`.
///
/// Throws EmptyIntersection when d(0, set) > L.
TruncatedProjection truncated_projection(const ConvexSet& set, const Vector& x, double radius,
                                         const Tolerances& tol = {});

/// d(x, set ∩ B(0, L)).
double truncated_distance(const ConvexSet& set, const Vector& x, double radius, const Tolerances& tol = {});

/// Aff(P) as a flat based at the first generator. Singular values of the
/// difference matrix at or below rank * sigma_max are treated as zero.
Flat affine_hull(const Polytope& p, const Tolerances& tol = {});

Eigen::Index dimension(const ConvexSet& set, const Tolerances& tol = {});

/// Supported: polytope + polytope, anything + singleton polytope (either
/// order). Other pairs throw UnsupportedOperation.
ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b);

/// Projection onto H_a = {x : <x - a, a> = 0}.
Vector project_hyperplane(const Vector& a, const Vector& x);

bool contains(const ConvexSet& set, const Vector& x, double tol, const Tolerances& tols = {});

}  // namespace hyperconvex
