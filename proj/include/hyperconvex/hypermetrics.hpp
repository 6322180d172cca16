#pragma once

#include "hyperconvex/convex_set.hpp"

#include <cstddef>

namespace hyperconvex {

/// Certified enclosure [lo, hi] of a real quantity. `certified` is false when
/// the evaluation budget ran out before the requested width was reached.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool certified = true;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v, double slack = 0.0) const { return lo - slack <= v && v <= hi + slack; }
  bool overlaps(const Interval& o, double slack = 0.0) const {
    return lo <= o.hi + slack && o.lo <= hi + slack;
  }
};

struct AWParams {
  double eps_sup = 1e-3;
  int j_cap = 64;
  std::size_t max_evaluations = 2'000'000;

  void validate() const;
};

/// Hausdorff distance of two polytopes: the larger of the two directed
/// maxima over generators.
double hausdorff(const Polytope& a, const Polytope& b, const Tolerances& tol = {});

/// Enclosure of sup over the closed r-ball of |d(x, A) - d(x, B)| with
/// width at most `eps` unless the budget runs out.
Interval sup_distance_gap(const ConvexSet& a, const ConvexSet& b, double radius, double eps,
                          std::size_t max_evaluations = 1'000'000, const Tolerances& tol = {});

/// d_H(A ∩ rB, B ∩ rB), evaluated as sup over rB of
/// |d(x, A ∩ rB) - d(x, B ∩ rB)| with truncated projections. When both
/// sets pass within tol.geom of the origin, the untruncated pair bounds
/// (widened by that distance) also cap each cell.
Interval truncated_hausdorff(const ConvexSet& a, const ConvexSet& b, double radius, double eps,
                             std::size_t max_evaluations = 1'000'000, const Tolerances& tol = {});

/// d_AW(A, B) = sup_j min(1/j, sup_{|x| <= j} |d(x, A) - d(x, B)|).
///
/// Terms are added lazily and refined where the global upper bound comes
/// from. The tail beyond the last term is bounded by 1/(j+1) and, when the
/// pair admits one, by an a-priori bound c + eta * j on the j-th supremum
/// (Hausdorff distance for polytope pairs, the flat-pair bound for flats).
/// At j_cap the tail bound stays in `hi`.
Interval attouch_wets(const ConvexSet& a, const ConvexSet& b, const AWParams& params = {},
                      const Tolerances& tol = {});

/// d_AW for sets containing the origin, with the j-th term replaced by
/// d_H(A ∩ jB, B ∩ jB) (truncated_hausdorff). Throws PreconditionError if a
/// set misses the origin.
Interval aw_origin(const ConvexSet& a, const ConvexSet& b, const AWParams& params = {},
                   const Tolerances& tol = {});

}  // namespace hyperconvex
