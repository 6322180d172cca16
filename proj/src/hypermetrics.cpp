#include "hyperconvex/hypermetrics.hpp"

#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/sup_gap_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>

namespace hyperconvex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A-priori bound sup_{|x| <= r} |d(x, A) - d(x, B)| <= offset + slope * r.
// Also |d(x, A) - d(x, B)| <= max(d(x, A), d(x, B)) <= r + max(nu_A, nu_B).
struct PairBound {
  double offset = kInf;
  double slope = 0.0;
  double max_nu = kInf;
  std::optional<FlatPairBound> flat;

  double at(double r) const { return std::min(offset + slope * r, r + max_nu); }
  bool identical() const { return offset == 0.0 && slope == 0.0; }
};

std::optional<Flat> as_flat(const ConvexSet& set) {
  if (const auto* f = std::get_if<Flat>(&set)) return *f;
  if (const auto* s = std::get_if<Subspace>(&set)) return Flat::through_origin(*s);
  const auto& p = std::get<Polytope>(set);
  for (Eigen::Index i = 1; i < p.size(); ++i) {
    if (p.points().col(i) != p.points().col(0)) return std::nullopt;
  }
  return Flat(p.generator(0), Subspace::zero(p.ambient_dim()));
}

PairBound pair_bound(const ConvexSet& a, const ConvexSet& b, const Tolerances& tol) {
  PairBound bound;
  bound.max_nu = std::max(nearest_point(a, tol).nu, nearest_point(b, tol).nu);
  const auto* pa = std::get_if<Polytope>(&a);
  const auto* pb = std::get_if<Polytope>(&b);
  if (pa != nullptr && pb != nullptr) {
    bound.offset = hausdorff(*pa, *pb, tol);
  }
  const auto fa = as_flat(a);
  const auto fb = as_flat(b);
  if (fa && fb) {
    const Eigen::Index n = fa->ambient_dim();
    const Matrix p = Matrix::Identity(n, n) - fa->direction().projector();
    const Matrix q = Matrix::Identity(n, n) - fb->direction().projector();
    FlatPairBound flat{p - q, p * fa->base() - q * fb->base(), 0.0};
    flat.diff_norm = flat.diff.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(flat.diff).singularValues()(0);
    const double offset = flat.offset.norm();
    if (offset + flat.diff_norm < bound.offset || !std::isfinite(bound.offset)) {
      bound.offset = std::min(bound.offset, offset);
      bound.slope = std::isfinite(bound.offset) && bound.offset < offset ? 0.0 : flat.diff_norm;
    }
    bound.flat = std::move(flat);
  }
  return bound;
}

DistanceOracle plain_oracle(const ConvexSet& set, const Tolerances& tol) {
  return [set, tol](const Vector& x) {
    Projection p = metric_projection(set, x, tol);
    return DistanceSample{p.dist, std::move(p.point)};
  };
}

DistanceOracle truncated_oracle(const ConvexSet& set, double radius, const Tolerances& tol) {
  return [set, radius, tol](const Vector& x) {
    TruncatedProjection p = truncated_projection(set, x, radius, tol);
    return DistanceSample{p.dist, std::move(p.point)};
  };
}

// max_{j' > j} min(1/j', offset + slope * j').
double tail_bound(int j, const PairBound& bound) {
  const double first = 1.0 / (j + 1);
  if (!std::isfinite(bound.offset)) return first;
  if (bound.slope == 0.0) return std::min(first, bound.offset);
  // min(1/t, c + eta t) peaks where eta t^2 + c t = 1.
  const double c = bound.offset;
  const double eta = bound.slope;
  const double crossing = 2.0 / (c + std::sqrt(c * c + 4.0 * eta));
  auto term = [&](double t) { return std::min(1.0 / t, c + eta * t); };
  double best = term(j + 1.0);
  for (double t : {std::floor(crossing), std::ceil(crossing)}) {
    if (t >= j + 1.0) best = std::max(best, term(t));
  }
  return best;
}

using TermFactory = std::function<std::unique_ptr<SupGapSearch>(int j)>;

Interval sweep(const TermFactory& make_term, const PairBound& bound, const AWParams& params) {
  struct Term {
    int j;
    std::unique_ptr<SupGapSearch> search;
    double lo() const { return std::min(1.0 / j, search->lower()); }
    double hi() const { return std::min(1.0 / j, search->upper()); }
  };
  std::vector<Term> terms;

  auto total_evaluations = [&] {
    std::size_t total = 0;
    for (const auto& t : terms) total += t.search->evaluations();
    return total;
  };

  for (;;) {
    double lo = 0.0;
    double terms_hi = 0.0;
    std::size_t culprit = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      lo = std::max(lo, terms[k].lo());
      if (terms[k].hi() > terms_hi) {
        terms_hi = terms[k].hi();
        culprit = k;
      }
    }
    const int added = static_cast<int>(terms.size());
    const double tail = tail_bound(added, bound);
    const double hi = std::max(terms_hi, tail);

    if (hi - lo <= params.eps_sup) return Interval{lo, hi, true};
    if (total_evaluations() >= params.max_evaluations) return Interval{lo, hi, false};

    if (tail >= terms_hi) {
      if (added >= params.j_cap) return Interval{lo, hi, false};
      const int j = added + 1;
      terms.push_back(Term{j, make_term(j)});
      continue;
    }

    Term& term = terms[culprit];
    const std::size_t before = term.search->evaluations();
    // Retirement is permanent, so the floor must never decrease: use lo, not the tail.
    term.search->refine(32, lo);
    if (term.search->evaluations() == before && term.hi() >= hi) {
      // No further splitting possible for the dominating term.
      return Interval{lo, hi, false};
    }
  }
}

}  // namespace

void AWParams::validate() const {
  if (!(eps_sup > 0.0)) throw PreconditionError("AWParams: eps_sup must be positive");
  if (j_cap < 1) throw PreconditionError("AWParams: j_cap must be at least 1");
}

double hausdorff(const Polytope& a, const Polytope& b, const Tolerances& tol) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "hausdorff");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) worst = std::max(worst, metric_projection(b, a.generator(i), tol).dist);
  for (Eigen::Index i = 0; i < b.size(); ++i) worst = std::max(worst, metric_projection(a, b.generator(i), tol).dist);
  return worst;
}

Interval sup_distance_gap(const ConvexSet& a, const ConvexSet& b, double radius, double eps,
                          std::size_t max_evaluations, const Tolerances& tol) {
  require_same_dim(ambient_dim(a), ambient_dim(b), "sup_distance_gap");
  if (!(radius > 0.0)) throw PreconditionError("sup_distance_gap: radius must be positive");
  if (!(eps > 0.0)) throw PreconditionError("sup_distance_gap: eps must be positive");

  const PairBound bound = pair_bound(a, b, tol);
  SupGapOptions options;
  options.radius = radius;
  options.max_evaluations = max_evaluations;
  options.global_upper = bound.at(radius);
  options.flat_bound = bound.flat;
  SupGapSearch search(plain_oracle(a, tol), plain_oracle(b, tol), ambient_dim(a), options);
  search.run(eps);
  return Interval{search.lower(), search.upper(), search.upper() - search.lower() <= eps};
}

Interval truncated_hausdorff(const ConvexSet& a, const ConvexSet& b, double radius, double eps,
                             std::size_t max_evaluations, const Tolerances& tol) {
  require_same_dim(ambient_dim(a), ambient_dim(b), "truncated_hausdorff");
  if (!(radius > 0.0)) throw PreconditionError("truncated_hausdorff: radius must be positive");
  if (!(eps > 0.0)) throw PreconditionError("truncated_hausdorff: eps must be positive");

  SupGapOptions options;
  options.radius = radius;
  options.max_evaluations = max_evaluations;
  // Projection onto a set through p(set) moves no point of rB farther than
  // |x| from p(set), so inside rB truncation changes d(., S) by at most
  // d(0, S). Near-origin pairs then inherit the untruncated pair bounds.
  const double nu = std::max(nearest_point(a, tol).nu, nearest_point(b, tol).nu);
  if (nu <= tol.geom) {
    const PairBound bound = pair_bound(a, b, tol);
    options.global_upper = bound.at(radius) + nu;
    options.flat_bound = bound.flat;
    if (options.flat_bound) options.flat_bound->slack = nu;
  }
  SupGapSearch search(truncated_oracle(a, radius, tol), truncated_oracle(b, radius, tol), ambient_dim(a),
                      options);
  search.run(eps);
  return Interval{search.lower(), search.upper(), search.upper() - search.lower() <= eps};
}

Interval attouch_wets(const ConvexSet& a, const ConvexSet& b, const AWParams& params, const Tolerances& tol) {
  require_same_dim(ambient_dim(a), ambient_dim(b), "attouch_wets");
  params.validate();
  const PairBound bound = pair_bound(a, b, tol);
  const DistanceOracle oa = plain_oracle(a, tol);
  const DistanceOracle ob = plain_oracle(b, tol);
  const Eigen::Index n = ambient_dim(a);

  return sweep(
      [&](int j) {
        SupGapOptions options;
        options.radius = j;
        options.max_evaluations = params.max_evaluations;
        options.global_upper = bound.at(j);
        options.flat_bound = bound.flat;
        return std::make_unique<SupGapSearch>(oa, ob, n, options);
      },
      bound, params);
}

Interval aw_origin(const ConvexSet& a, const ConvexSet& b, const AWParams& params, const Tolerances& tol) {
  require_same_dim(ambient_dim(a), ambient_dim(b), "aw_origin");
  params.validate();
  const Vector origin = Vector::Zero(ambient_dim(a));
  if (!contains(a, origin, tol.geom, tol) || !contains(b, origin, tol.geom, tol)) {
    throw PreconditionError("aw_origin: both sets must contain the origin");
  }

  // Only an exact coincidence of the two sets is used as a-priori knowledge;
  // everything else comes from the truncated distance functions.
  PairBound bound;
  if (pair_bound(a, b, tol).identical()) {
    bound.offset = 0.0;
  }
  const Eigen::Index n = ambient_dim(a);

  return sweep(
      [&](int j) {
        SupGapOptions options;
        options.radius = j;
        options.max_evaluations = params.max_evaluations;
        return std::make_unique<SupGapSearch>(truncated_oracle(a, j, tol), truncated_oracle(b, j, tol), n,
                                              options);
      },
      bound, params);
}

}  // namespace hyperconvex
