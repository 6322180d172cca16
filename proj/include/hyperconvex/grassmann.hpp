#pragma once

#include "hyperconvex/convex_set.hpp"
#include "hyperconvex/hypermetrics.hpp"

#include <utility>
#include <vector>

namespace hyperconvex {

/// Explicit n x n matrix of the orthogonal projection onto a subspace.
class ProjectionOperator {
 public:
  explicit ProjectionOperator(const Subspace& v) : matrix_(v.projector()) {}
  const Matrix& matrix() const { return matrix_; }
  Vector apply(const Vector& x) const { return matrix_ * x; }

  /// Largest of the symmetry and idempotency residuals in max-abs norm.
  double law_residual() const;

 private:
  Matrix matrix_;
};

/// Orthonormal basis of span(vectors) from the SVD; singular values at or
/// below tol.rank * sigma_max are treated as zero. Throws PreconditionError
/// for an empty list or a zero span.
Subspace orthonormal_basis(const std::vector<Vector>& vectors, const Tolerances& tol = {});

Subspace orthogonal_complement(const Subspace& v);

/// max(||P_{V^perp} P_W||, ||P_{W^perp} P_V||) in the spectral norm.
double gap(const Subspace& v, const Subspace& w);

/// Independent enclosure of the gap as sup over the unit ball of
/// |d(x, V) - d(x, W)|.
Interval gap_direct(const Subspace& v, const Subspace& w, double eps, std::size_t max_evaluations = 1'000'000);

/// Subspace equality as sets: gap at most tol.
bool same_subspace(const Subspace& v, const Subspace& w, double tol);

/// True iff the orthogonal projection onto W maps V onto W, i.e. every
/// singular value of W^T V exceeds tol.rank. Requires dim V == dim W.
bool in_tilde(const Subspace& w, const Subspace& v, const Tolerances& tol = {});

/// The unique point of V whose projection onto W is w.
Vector lift_point(const Subspace& w, const Subspace& v, const Vector& point, const Tolerances& tol = {});

/// Direction subspace and nearest point to the origin of a flat.
std::pair<Subspace, Vector> parallel_subspace(const Flat& f);

/// The flat V + omega, for V in the chart domain of W and omega in W^perp.
Flat chart_flat(const Subspace& w, const Subspace& v, const Vector& omega, const Tolerances& tol = {});

/// Inverse of chart_flat: (direction of F, p(F) - lift of pi_W(p(F))), with
/// the offset projected onto W^perp.
std::pair<Subspace, Vector> chart_flat_inv(const Subspace& w, const Flat& f, const Tolerances& tol = {});

}  // namespace hyperconvex
