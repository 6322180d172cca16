#include "hyperconvex/convex_set.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hyperconvex {

void Tolerances::validate() const {
  if (!(orth > 0.0) || !(rank > 0.0) || !(geom > 0.0) || !(sup_width > 0.0)) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
  if (rank < 16.0 * std::numeric_limits<double>::epsilon()) {
    throw std::invalid_argument("rank tolerance below the double-precision floor");
  }
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v(i++) = c;
  return v;
}

Subspace::Subspace(Matrix basis, const Tolerances& tol) : basis_(std::move(basis)) {
  if (!basis_.allFinite()) throw std::invalid_argument("subspace basis has non-finite entries");
  if (basis_.cols() > basis_.rows()) {
    throw std::invalid_argument("subspace basis has more vectors than the ambient dimension");
  }
  if (basis_.cols() > 0) {
    const Matrix gram = basis_.transpose() * basis_;
    const double defect = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > tol.orth) {
      throw std::invalid_argument("subspace basis is not orthonormal (defect " + std::to_string(defect) +
                                  ")");
    }
  }
}

Subspace Subspace::zero(Eigen::Index ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return Subspace(Matrix::Identity(ambient_dim, ambient_dim));
}

Vector Subspace::project(const Vector& x) const {
  require_same_dim(ambient_dim(), x.size(), "Subspace::project");
  if (dim() == 0) return Vector::Zero(x.size());
  return basis_ * (basis_.transpose() * x);
}

Flat::Flat(Vector base, Subspace direction) : base_(std::move(base)), direction_(std::move(direction)) {
  if (!base_.allFinite()) throw std::invalid_argument("flat base has non-finite entries");
  require_same_dim(base_.size(), direction_.ambient_dim(), "Flat");
}

Flat::Flat(Vector base, Matrix basis, const Tolerances& tol)
    : Flat(std::move(base), Subspace(std::move(basis), tol)) {}

Flat Flat::through_origin(const Subspace& v) { return Flat(Vector::Zero(v.ambient_dim()), v); }

Polytope::Polytope(Matrix points) : points_(std::move(points)) {
  if (points_.cols() == 0) throw std::invalid_argument("polytope needs at least one generator");
  if (points_.rows() == 0) throw std::invalid_argument("polytope ambient dimension must be positive");
  if (!points_.allFinite()) throw std::invalid_argument("polytope generator has non-finite entries");
}

namespace {

Matrix stack_columns(const std::vector<Vector>& points) {
  if (points.empty()) throw std::invalid_argument("polytope needs at least one generator");
  const Eigen::Index n = points.front().size();
  Matrix m(n, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_dim(n, points[i].size(), "Polytope");
    m.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  return m;
}

Matrix stack_columns(std::initializer_list<std::initializer_list<double>> points) {
  std::vector<Vector> cols;
  cols.reserve(points.size());
  for (const auto& p : points) cols.push_back(make_vector(p));
  return stack_columns(cols);
}

}  // namespace

Polytope::Polytope(const std::vector<Vector>& points) : Polytope(stack_columns(points)) {}

Polytope::Polytope(std::initializer_list<std::initializer_list<double>> points)
    : Polytope(stack_columns(points)) {}

Polytope Polytope::translated(const Vector& v) const {
  require_same_dim(ambient_dim(), v.size(), "Polytope::translated");
  return Polytope(Matrix(points_.colwise() + v));
}

Eigen::Index ambient_dim(const ConvexSet& set) {
  return std::visit([](const auto& s) { return s.ambient_dim(); }, set);
}

std::string_view kind_name(const ConvexSet& set) {
  switch (set.index()) {
    case 0: return "polytope";
    case 1: return "flat";
    default: return "subspace";
  }
}

}  // namespace hyperconvex
