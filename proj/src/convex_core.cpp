#include "hyperconvex/convex_core.hpp"

#include "hyperconvex/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <tuple>

namespace hyperconvex {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::optional<Vector> singleton_point(const ConvexSet& set) {
  const auto* p = std::get_if<Polytope>(&set);
  if (p == nullptr) return std::nullopt;
  const Matrix& pts = p->points();
  for (Eigen::Index i = 1; i < pts.cols(); ++i) {
    if (pts.col(i) != pts.col(0)) return std::nullopt;
  }
  return Vector(pts.col(0));
}

ConvexSet translate(const ConvexSet& set, const Vector& v) {
  return std::visit(Overloaded{
                        [&](const Polytope& p) -> ConvexSet { return p.translated(v); },
                        [&](const Flat& f) -> ConvexSet { return Flat(f.base() + v, f.direction()); },
                        [&](const Subspace& s) -> ConvexSet {
                          if (v.isZero(0.0)) return s;
                          return Flat(v, s);
                        },
                    },
                    set);
}

}  // namespace

Projection metric_projection(const Polytope& set, const Vector& x, const Tolerances& tol) {
  require_same_dim(set.ambient_dim(), x.size(), "metric_projection");
  const Matrix shifted = set.points().colwise() - x;
  MinNormOptions options;
  const double scale = shifted.colwise().squaredNorm().maxCoeff();
  options.gap_tolerance = std::max(tol.geom * tol.geom, 64.0 * kEps * scale);
  options.max_iterations =
      std::max<int>(10 * static_cast<int>(set.size()) * static_cast<int>(set.ambient_dim()), 50);
  MinNormPoint mnp;
  try {
    mnp = min_norm_point(shifted, options);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("metric_projection: ") + e.what(), Vector(e.best() + x),
                           e.residual());
  }
  return Projection{mnp.point + x, mnp.point.norm()};
}

Projection metric_projection(const Flat& set, const Vector& x) {
  require_same_dim(set.ambient_dim(), x.size(), "metric_projection");
  Vector point = set.direction().project(x - set.base()) + set.base();
  const double dist = (x - point).norm();
  return Projection{std::move(point), dist};
}

Projection metric_projection(const Subspace& set, const Vector& x) {
  require_same_dim(set.ambient_dim(), x.size(), "metric_projection");
  Vector point = set.project(x);
  const double dist = (x - point).norm();
  return Projection{std::move(point), dist};
}

Projection metric_projection(const ConvexSet& set, const Vector& x, const Tolerances& tol) {
  return std::visit(Overloaded{
                        [&](const Polytope& p) { return metric_projection(p, x, tol); },
                        [&](const Flat& f) { return metric_projection(f, x); },
                        [&](const Subspace& s) { return metric_projection(s, x); },
                    },
                    set);
}

NearestPoint nearest_point(const ConvexSet& set, const Tolerances& tol) {
  const Projection proj = metric_projection(set, Vector::Zero(ambient_dim(set)), tol);
  return NearestPoint{proj.point, proj.point.norm()};
}

TruncatedProjection truncated_projection(const ConvexSet& set, const Vector& x, double radius,
                                         const Tolerances& tol) {
  require_same_dim(ambient_dim(set), x.size(), "truncated_projection");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw PreconditionError("truncated_projection: radius must be positive and finite");
  }

  const Projection free = metric_projection(set, x, tol);
  if (free.point.norm() <= radius) {
    return TruncatedProjection{free.point, free.dist, free.dist, 0.0};
  }

  const NearestPoint origin = nearest_point(set, tol);
  if (origin.nu > radius + tol.geom) {
    throw EmptyIntersection("truncated_projection: set misses the ball (d(0, set) = " +
                            std::to_string(origin.nu) + " > " + std::to_string(radius) + ")");
  }

  double lower_sq = 0.0;
  auto evaluate = [&](double mu) {
    Projection p = metric_projection(set, Vector(x / (1.0 + mu)), tol);
    const double norm_sq = p.point.squaredNorm();
    const double dual = (p.point - x).squaredNorm() + mu * (norm_sq - radius * radius);
    lower_sq = std::max(lower_sq, dual);
    return std::pair<Vector, double>{std::move(p.point), std::sqrt(norm_sq)};
  };

  // The ball touches the set only near p(set): nothing left to optimise.
  if (origin.nu >= radius * (1.0 - 1e-12)) {
    const double d = (x - origin.p).norm();
    return TruncatedProjection{origin.p, d, d, std::numeric_limits<double>::infinity()};
  }

  double mu_lo = 0.0;
  double mu_hi = 1.0;
  auto [y_hi, norm_hi] = evaluate(mu_hi);
  while (norm_hi > radius) {
    mu_lo = mu_hi;
    mu_hi *= 4.0;
    if (mu_hi > 1e18) {
      const double d = (x - origin.p).norm();
      return TruncatedProjection{origin.p, d, std::sqrt(lower_sq), mu_hi};
    }
    std::tie(y_hi, norm_hi) = evaluate(mu_hi);
  }

  for (int it = 0; it < 200 && mu_hi - mu_lo > 4.0 * kEps * mu_hi; ++it) {
    const double mid = (mu_hi > 8.0 * mu_lo && mu_lo > 0.0) ? std::sqrt(mu_lo * mu_hi) : 0.5 * (mu_lo + mu_hi);
    auto [y, norm] = evaluate(mid);
    if (norm > radius) {
      mu_lo = mid;
    } else {
      mu_hi = mid;
      y_hi = std::move(y);
      norm_hi = norm;
      if (radius - norm <= 1e-14 * radius) break;
    }
  }

  const double dist = (x - y_hi).norm();
  return TruncatedProjection{y_hi, dist, std::min(dist, std::sqrt(lower_sq)), mu_hi};
}

double truncated_distance(const ConvexSet& set, const Vector& x, double radius, const Tolerances& tol) {
  return truncated_projection(set, x, radius, tol).dist;
}

Flat affine_hull(const Polytope& p, const Tolerances& tol) {
  const Eigen::Index n = p.ambient_dim();
  const Vector base = p.generator(0);
  if (p.size() == 1) return Flat(base, Subspace::zero(n));

  const Matrix diffs = p.points().rightCols(p.size() - 1).colwise() - base;
  Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeThinU);
  const Vector& sigma = svd.singularValues();
  const double scale = std::max(1.0, p.points().cwiseAbs().maxCoeff());
  const double cutoff = std::max(tol.rank * sigma(0), 1e3 * kEps * scale);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return Flat(base, Subspace(svd.matrixU().leftCols(rank)));
}

Eigen::Index dimension(const ConvexSet& set, const Tolerances& tol) {
  return std::visit(Overloaded{
                        [&](const Polytope& p) { return affine_hull(p, tol).dim(); },
                        [&](const Flat& f) { return f.dim(); },
                        [&](const Subspace& s) { return s.dim(); },
                    },
                    set);
}

ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b) {
  require_same_dim(ambient_dim(a), ambient_dim(b), "minkowski_sum");
  if (auto v = singleton_point(b)) return translate(a, *v);
  if (auto v = singleton_point(a)) return translate(b, *v);

  const auto* pa = std::get_if<Polytope>(&a);
  const auto* pb = std::get_if<Polytope>(&b);
  if (pa == nullptr || pb == nullptr) {
    throw UnsupportedOperation(std::string("minkowski_sum: unsupported pair ") + std::string(kind_name(a)) +
                               " + " + std::string(kind_name(b)));
  }
  Matrix sums(pa->ambient_dim(), pa->size() * pb->size());
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < pa->size(); ++i) {
    for (Eigen::Index j = 0; j < pb->size(); ++j) sums.col(c++) = pa->points().col(i) + pb->points().col(j);
  }
  return Polytope(std::move(sums));
}

Vector project_hyperplane(const Vector& a, const Vector& x) {
  require_same_dim(a.size(), x.size(), "project_hyperplane");
  const double norm_sq = a.squaredNorm();
  if (!(norm_sq > 0.0)) throw PreconditionError("project_hyperplane: a must be nonzero");
  return x + a - (x.dot(a) / norm_sq) * a;
}

bool contains(const ConvexSet& set, const Vector& x, double tol, const Tolerances& tols) {
  return metric_projection(set, x, tols).dist <= tol;
}

}  // namespace hyperconvex
