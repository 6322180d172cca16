#pragma once

#include "hyperconvex/types.hpp"

#include <initializer_list>
#include <string_view>
#include <variant>
#include <vector>

namespace hyperconvex {

/// Linear subspace of R^n stored as an n x k matrix with orthonormal columns.
class Subspace {
 public:
  /// Columns of `basis` must be orthonormal within `tol.orth`.
  explicit Subspace(Matrix basis, const Tolerances& tol = {});

  static Subspace zero(Eigen::Index ambient_dim);
  static Subspace full(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  /// Orthogonal projection matrix B B^T.
  Matrix projector() const { return basis_ * basis_.transpose(); }
  Vector project(const Vector& x) const;

 private:
  Matrix basis_;
};

/// Affine flat base + V.
class Flat {
 public:
  Flat(Vector base, Subspace direction);
  Flat(Vector base, Matrix basis, const Tolerances& tol = {});

  /// The subspace itself viewed as a flat through the origin.
  static Flat through_origin(const Subspace& v);

  Eigen::Index ambient_dim() const { return base_.size(); }
  Eigen::Index dim() const { return direction_.dim(); }
  const Vector& base() const { return base_; }
  const Subspace& direction() const { return direction_; }

 private:
  Vector base_;
  Subspace direction_;
};

/// Convex hull of finitely many generators (V-representation).
class Polytope {
 public:
  /// Generators are the columns of `points`; at least one is required.
  explicit Polytope(Matrix points);
  explicit Polytope(const std::vector<Vector>& points);
  Polytope(std::initializer_list<std::initializer_list<double>> points);

  Eigen::Index ambient_dim() const { return points_.rows(); }
  Eigen::Index size() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  Vector generator(Eigen::Index i) const { return points_.col(i); }

  Polytope translated(const Vector& v) const;

 private:
  Matrix points_;
};

using ConvexSet = std::variant<Polytope, Flat, Subspace>;

Eigen::Index ambient_dim(const ConvexSet& set);
std::string_view kind_name(const ConvexSet& set);

Vector make_vector(std::initializer_list<double> coords);
bool all_finite(const Matrix& m);

}  // namespace hyperconvex
