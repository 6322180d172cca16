#include "hyperconvex/grassmann.hpp"

#include "hyperconvex/convex_core.hpp"

#include <algorithm>
#include <cmath>

namespace hyperconvex {

namespace {

constexpr double kMaxLiftCondition = 1e12;

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

void require_in_w_perp(const Subspace& w, const Vector& omega, double tol, const char* where) {
  const double leak = w.project(omega).norm();
  if (leak > tol * std::max(1.0, omega.norm())) {
    throw PreconditionError(std::string(where) + ": offset is not orthogonal to W (|pi_W(omega)| = " +
                            std::to_string(leak) + ")");
  }
}

}  // namespace

double ProjectionOperator::law_residual() const {
  const double symmetry = (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
  const double idempotency = (matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff();
  return matrix_.size() == 0 ? 0.0 : std::max(symmetry, idempotency);
}

Subspace orthonormal_basis(const std::vector<Vector>& vectors, const Tolerances& tol) {
  if (vectors.empty()) throw PreconditionError("orthonormal_basis: empty vector list");
  const Eigen::Index n = vectors.front().size();
  Matrix stacked(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_same_dim(n, vectors[i].size(), "orthonormal_basis");
    stacked.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  if (!all_finite(stacked)) throw PreconditionError("orthonormal_basis: non-finite entry");

  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
  const Vector& sigma = svd.singularValues();
  if (sigma.size() == 0 || !(sigma(0) > 0.0)) throw PreconditionError("orthonormal_basis: vectors span {0}");
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol.rank * sigma(0)) ++rank;
  return Subspace(svd.matrixU().leftCols(rank), tol);
}

Subspace orthogonal_complement(const Subspace& v) {
  const Eigen::Index n = v.ambient_dim();
  if (v.dim() == 0) return Subspace::full(n);
  if (v.dim() == n) return Subspace::zero(n);
  Eigen::JacobiSVD<Matrix> svd(v.basis(), Eigen::ComputeFullU);
  return Subspace(svd.matrixU().rightCols(n - v.dim()));
}

double gap(const Subspace& v, const Subspace& w) {
  require_same_dim(v.ambient_dim(), w.ambient_dim(), "gap");
  const Eigen::Index n = v.ambient_dim();
  const Matrix pv = v.projector();
  const Matrix pw = w.projector();
  const Matrix id = Matrix::Identity(n, n);
  const double g = std::max(spectral_norm((id - pv) * pw), spectral_norm((id - pw) * pv));
  return std::min(g, 1.0);
}

Interval gap_direct(const Subspace& v, const Subspace& w, double eps, std::size_t max_evaluations) {
  require_same_dim(v.ambient_dim(), w.ambient_dim(), "gap_direct");
  return sup_distance_gap(v, w, 1.0, eps, max_evaluations);
}

bool same_subspace(const Subspace& v, const Subspace& w, double tol) {
  return v.ambient_dim() == w.ambient_dim() && gap(v, w) <= tol;
}

bool in_tilde(const Subspace& w, const Subspace& v, const Tolerances& tol) {
  require_same_dim(w.ambient_dim(), v.ambient_dim(), "in_tilde");
  if (w.dim() != v.dim()) {
    throw DimensionMismatch("in_tilde: subspace dimensions differ (" + std::to_string(w.dim()) + " vs " +
                            std::to_string(v.dim()) + ")");
  }
  if (w.dim() == 0) return true;
  const Matrix gram = w.basis().transpose() * v.basis();
  Eigen::JacobiSVD<Matrix> svd(gram);
  return svd.singularValues().minCoeff() > tol.rank;
}

Vector lift_point(const Subspace& w, const Subspace& v, const Vector& point, const Tolerances& tol) {
  require_same_dim(w.ambient_dim(), point.size(), "lift_point");
  if (!in_tilde(w, v, tol)) throw PreconditionError("lift_point: V is outside the chart domain of W");
  const double off = (point - w.project(point)).norm();
  if (off > tol.geom * std::max(1.0, point.norm())) {
    throw PreconditionError("lift_point: point is not in W (distance " + std::to_string(off) + ")");
  }
  if (v.dim() == 0) return Vector::Zero(point.size());

  const Matrix gram = w.basis().transpose() * v.basis();
  Eigen::JacobiSVD<Matrix> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  if (sigma(0) > kMaxLiftCondition * sigma(sigma.size() - 1)) {
    throw PreconditionError("lift_point: ill-conditioned lift (condition number " +
                            std::to_string(sigma(0) / sigma(sigma.size() - 1)) + ")");
  }
  const Vector coords = svd.solve(w.basis().transpose() * point);
  return v.basis() * coords;
}

std::pair<Subspace, Vector> parallel_subspace(const Flat& f) {
  Vector p = f.base() - f.direction().project(f.base());
  return {f.direction(), std::move(p)};
}

Flat chart_flat(const Subspace& w, const Subspace& v, const Vector& omega, const Tolerances& tol) {
  require_same_dim(w.ambient_dim(), omega.size(), "chart_flat");
  if (!in_tilde(w, v, tol)) throw PreconditionError("chart_flat: V is outside the chart domain of W");
  require_in_w_perp(w, omega, tol.geom, "chart_flat");
  return Flat(omega, v);
}

std::pair<Subspace, Vector> chart_flat_inv(const Subspace& w, const Flat& f, const Tolerances& tol) {
  require_same_dim(w.ambient_dim(), f.ambient_dim(), "chart_flat_inv");
  auto [v, p] = parallel_subspace(f);
  if (v.dim() != w.dim() || !in_tilde(w, v, tol)) {
    throw PreconditionError("chart_flat_inv: direction of F is outside the chart domain of W");
  }
  Vector omega = p - lift_point(w, v, w.project(p), tol);
  omega -= w.project(omega);
  return {std::move(v), std::move(omega)};
}

}  // namespace hyperconvex
