#include "hyperconvex/bundle_charts.hpp"

#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/grassmann.hpp"

#include <algorithm>
#include <cassert>
#include <variant>

namespace hyperconvex {

Polytope lift_set(const Subspace& w, const Subspace& v, const Polytope& a, const Tolerances& tol) {
  require_same_dim(w.ambient_dim(), a.ambient_dim(), "lift_set");
  Matrix lifted(a.ambient_dim(), a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    lifted.col(i) = lift_point(w, v, a.generator(i), tol);
    assert((w.project(lifted.col(i)) - a.points().col(i)).norm() <=
           tol.geom * std::max(1.0, a.points().col(i).norm()) * 1e3);
  }
  return Polytope(std::move(lifted));
}

Subspace base_map(const ConvexSet& a, const Tolerances& tol) {
  if (const auto* s = std::get_if<Subspace>(&a)) return *s;
  if (const auto* f = std::get_if<Flat>(&a)) return f->direction();
  return affine_hull(std::get<Polytope>(a), tol).direction();
}

Polytope chart_convex(const Subspace& w, const ChartTriple& t, const Tolerances& tol) {
  require_same_dim(w.ambient_dim(), t.a.ambient_dim(), "chart_convex");
  require_same_dim(w.ambient_dim(), t.omega.size(), "chart_convex");
  if (t.v.dim() != w.dim() || !in_tilde(w, t.v, tol)) {
    throw PreconditionError("chart_convex: V is outside the chart domain of W");
  }
  if (w.project(t.omega).norm() > tol.geom * std::max(1.0, t.omega.norm())) {
    throw PreconditionError("chart_convex: omega is not orthogonal to W");
  }
  for (Eigen::Index i = 0; i < t.a.size(); ++i) {
    const Vector g = t.a.generator(i);
    if ((g - w.project(g)).norm() > tol.geom * std::max(1.0, g.norm())) {
      throw PreconditionError("chart_convex: fiber generator " + std::to_string(i) + " is not in W");
    }
  }
  if (dimension(t.a, tol) > w.dim()) {
    throw PreconditionError("chart_convex: fiber dimension exceeds dim W");
  }
  return lift_set(w, t.v, t.a, tol).translated(t.omega);
}

ChartTriple chart_convex_inv(const Subspace& w, const Polytope& b, const Tolerances& tol) {
  require_same_dim(w.ambient_dim(), b.ambient_dim(), "chart_convex_inv");
  const Flat hull = affine_hull(b, tol);
  if (hull.dim() != w.dim()) {
    throw PreconditionError("chart_convex_inv: dimension of B (" + std::to_string(hull.dim()) +
                            ") differs from dim W (" + std::to_string(w.dim()) + ")");
  }
  if (!in_tilde(w, hull.direction(), tol)) {
    throw PreconditionError("chart_convex_inv: base of B is outside the chart domain of W");
  }
  auto [v, omega] = chart_flat_inv(w, hull, tol);
  Matrix fiber = b.points().colwise() - omega;
  fiber = w.projector() * fiber;
  return ChartTriple{std::move(v), std::move(omega), Polytope(std::move(fiber))};
}

}  // namespace hyperconvex
