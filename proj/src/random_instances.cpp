#include "hyperconvex/random_instances.hpp"

#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/grassmann.hpp"

#include <cmath>

namespace hyperconvex {

const std::vector<std::string>& instance_kinds() {
  static const std::vector<std::string> kinds = {"gaussian-polytope", "uniform-subspace", "random-flat"};
  return kinds;
}

Vector gaussian_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Subspace uniform_subspace(Rng& rng, Eigen::Index n, Eigen::Index k) {
  if (k < 0 || k > n) throw PreconditionError("uniform_subspace: need 0 <= k <= n");
  if (k == 0) return Subspace::zero(n);
  // QR of a Gaussian matrix with the signs of R's diagonal fixed is Haar.
  const Matrix g = gaussian_matrix(rng, n, k);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return Subspace(std::move(q));
}

Vector uniform_in_ball(Rng& rng, Eigen::Index n, double radius) {
  std::uniform_real_distribution<double> unit;
  Vector g = gaussian_vector(rng, n);
  const double norm = g.norm();
  if (norm == 0.0) return Vector::Zero(n);
  return g * (radius * std::pow(unit(rng), 1.0 / static_cast<double>(n)) / norm);
}

Vector gaussian_in_complement(Rng& rng, const Subspace& w) {
  const Vector g = gaussian_vector(rng, w.ambient_dim());
  return g - w.project(g);
}

ConvexSet random_instance(std::string_view kind, Eigen::Index n, Eigen::Index k, Rng& rng) {
  if (n < 1 || k < 0 || k > n) {
    throw PreconditionError("random_instance: need n >= 1 and 0 <= k <= n (got n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
  if (kind == "uniform-subspace") return uniform_subspace(rng, n, k);
  if (kind == "random-flat") {
    Subspace v = uniform_subspace(rng, n, k);
    return Flat(gaussian_vector(rng, n), std::move(v));
  }
  if (kind == "gaussian-polytope") {
    for (;;) {
      const Subspace v = uniform_subspace(rng, n, k);
      const Vector offset = gaussian_vector(rng, n);
      const Matrix coords = gaussian_matrix(rng, k, k + 3);
      Matrix pts = (v.basis() * coords).colwise() + offset;
      Polytope p(std::move(pts));
      if (dimension(p) == k) return p;
    }
  }
  throw PreconditionError("random_instance: unknown kind '" + std::string(kind) + "'");
}

ConvexSet random_instance(std::string_view kind, Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
  Rng rng(seed);
  return random_instance(kind, n, k, rng);
}

}  // namespace hyperconvex
