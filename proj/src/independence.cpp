#include "hyperconvex/independence.hpp"

#include "hyperconvex/convex_set.hpp"
#include "hyperconvex/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hyperconvex {

namespace {

struct SingularRange {
  double min = 0.0;
  double max = 0.0;
};

// Extreme singular values of an n x k matrix, with sigma_min = 0 when k > n.
SingularRange singular_range(const Matrix& d) {
  if (d.cols() == 0) return {std::numeric_limits<double>::infinity(), 0.0};
  Eigen::JacobiSVD<Matrix> svd(d);
  const Vector& s = svd.singularValues();
  const double smin = d.cols() > d.rows() ? 0.0 : s(s.size() - 1);
  return {smin, s(0)};
}

Vector on_sphere(Rng& rng, Eigen::Index n, double radius) {
  const Vector g = gaussian_vector(rng, n);
  const double norm = g.norm();
  if (norm == 0.0) return Vector::Zero(n);
  return g * (radius / norm);
}

// Orthogonal projection of the columns of `pts` onto their best-fitting
// affine flat of dimension `dim` (principal components about the centroid).
Matrix collapse(const Matrix& pts, Eigen::Index dim) {
  const Vector centroid = pts.rowwise().mean();
  const Matrix centered = pts.colwise() - centroid;
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinU);
  const Matrix u = svd.matrixU().leftCols(std::min<Eigen::Index>(dim, svd.matrixU().cols()));
  return (u * (u.transpose() * centered)).colwise() + centroid;
}

nlohmann::json points_json(const Matrix& pts) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    out.push_back(std::vector<double>(pts.col(i).data(), pts.col(i).data() + pts.rows()));
  }
  return out;
}

}  // namespace

PointFamily::PointFamily(std::vector<Vector> points) {
  if (points.empty()) throw PreconditionError("PointFamily: at least one point is required");
  const Eigen::Index n = points.front().size();
  points_.resize(n, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_dim(n, points[i].size(), "PointFamily");
    points_.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  if (!all_finite(points_)) throw PreconditionError("PointFamily: non-finite coordinate");
}

PointFamily::PointFamily(Matrix points) : points_(std::move(points)) {
  if (points_.cols() == 0) throw PreconditionError("PointFamily: at least one point is required");
  if (!all_finite(points_)) throw PreconditionError("PointFamily: non-finite coordinate");
}

Matrix PointFamily::differences() const {
  return points_.rightCols(points_.cols() - 1).colwise() - points_.col(0);
}

bool is_affinely_independent(const PointFamily& fam, double tol) {
  if (fam.k() == 0) return true;
  const SingularRange s = singular_range(fam.differences());
  return s.min > tol * std::max(s.max, 1.0);
}

double independence_radius(const PointFamily& fam, const Tolerances& tol) {
  if (fam.k() == 0) return std::numeric_limits<double>::infinity();
  if (!is_affinely_independent(fam, tol.rank)) {
    throw PreconditionError("independence_radius: family is affinely dependent");
  }
  const SingularRange s = singular_range(fam.differences());
  return s.min / (4.0 * std::sqrt(static_cast<double>(fam.k())));
}

Report adversarial_independence_check(const PointFamily& fam, double delta, int trials, std::uint64_t seed,
                                      const Tolerances& tol) {
  if (!(delta > 0.0)) throw PreconditionError("adversarial_independence_check: delta must be positive");
  Report report;
  report.suite = "independence-check";
  report.seed = seed;
  report.trials = std::max(trials, 0);
  if (fam.k() == 0 || trials <= 0) return report;

  const Eigen::Index n = fam.ambient_dim();
  const Eigen::Index m = fam.size();
  const Matrix& a = fam.points();
  const double reach = std::isfinite(delta) ? delta : 1e6;

  for (int t = 0; t < trials; ++t) {
    Rng rng(substream_key(seed, report.suite, static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> unit;
    Matrix u = a;
    switch (t % 3) {
      case 0:
        for (Eigen::Index i = 0; i < m; ++i) u.col(i) += uniform_in_ball(rng, n, reach);
        break;
      case 1:
        for (Eigen::Index i = 0; i < m; ++i) u.col(i) += on_sphere(rng, n, reach * (1.0 - 1e-9 * unit(rng)));
        break;
      default: {
        // Jitter, then push the selection onto a flat of one lower dimension.
        const double jitter = reach * unit(rng) * unit(rng);
        for (Eigen::Index i = 0; i < m; ++i) u.col(i) += uniform_in_ball(rng, n, jitter);
        u = collapse(u, fam.k() - 1);
        break;
      }
    }

    // Only selections strictly inside every ball count.
    bool admissible = true;
    for (Eigen::Index i = 0; i < m && admissible; ++i) admissible = (u.col(i) - a.col(i)).norm() < delta;
    if (!admissible) continue;

    const Matrix d = u.rightCols(m - 1).colwise() - u.col(0);
    const SingularRange s = singular_range(d);
    const double threshold = tol.rank * std::max(1.0, s.max);
    if (s.min <= threshold) {
      report.failures.push_back(Failure{{{"family", points_json(a)}, {"selection", points_json(u)}, {"delta", delta}},
                                        s.min,
                                        threshold,
                                        "affinely dependent selection"});
    }
  }
  return report;
}

Vector barycentric_coordinates(const PointFamily& simplex, const Vector& x) {
  require_same_dim(simplex.ambient_dim(), x.size(), "barycentric_coordinates");
  Vector lambda(simplex.size());
  if (simplex.k() == 0) {
    lambda(0) = 1.0;
    return lambda;
  }
  const Matrix d = simplex.differences();
  const Vector c = d.colPivHouseholderQr().solve(Vector(x - simplex.point(0)));
  lambda(0) = 1.0 - c.sum();
  lambda.tail(c.size()) = c;
  return lambda;
}

bool in_relative_interior(const PointFamily& simplex, const Vector& x, double tol) {
  const Vector lambda = barycentric_coordinates(simplex, x);
  const Vector rebuilt = simplex.points() * lambda;
  const double off = (rebuilt - x).norm();
  if (off > tol) {
    throw PreconditionError("in_relative_interior: point is off the affine hull (distance " +
                            std::to_string(off) + ")");
  }
  if (simplex.k() == 0) return true;
  return (lambda.array() > tol).all() && (lambda.array() < 1.0 - tol).all();
}

}  // namespace hyperconvex
